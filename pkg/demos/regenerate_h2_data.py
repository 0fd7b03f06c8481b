"""Rebuild the bundled H2 STO-3G Pauli Hamiltonian from its integrals."""

from pathlib import Path

import paulitree
from paulitree.hamiltonians import build_h2
from paulitree.pauli import dumps, hamiltonian_to_dict

target = Path(paulitree.__file__).parent / "data" / "h2_sto3g.json"
target.write_text(dumps(hamiltonian_to_dict(build_h2())))
print(f"wrote {target}")
