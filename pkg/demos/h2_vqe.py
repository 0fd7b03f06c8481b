"""Compress the H2 UCCSD ansatz and optimise it at a few ratios."""

from paulitree import sim
from paulitree.hamiltonians import h2_sto3g
from paulitree.uccsd import ActiveSpace, generate_uccsd
from paulitree.vqe import VqeConfig, convergence_compare

h = h2_sto3g()
a = generate_uccsd(ActiveSpace(4, 2))
print(f"H2: {len(h.terms)} Hamiltonian terms, {a.num_parameters} ansatz parameters")
print(f"exact ground energy {sim.exact_ground_energy(h):.10f}")
print("ratio  params  iters  evals  energy          error")
for row in convergence_compare(h, a, [0.1, 0.5, 1.0], VqeConfig()):
    print(f"{row.ratio:5.1f}  {row.num_parameters:6d}  {row.iterations:5d}  {row.evaluations:5d}  "
          f"{row.final_energy:.10f}  {row.energy_error:.2e}")
