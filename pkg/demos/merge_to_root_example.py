"""ZZZZ placed on scattered XTree17Q qubits: Merge-to-Root against the generic
router applied to the same CNOT chain."""

from paulitree.architecture import xtree
from paulitree.pauli import Ansatz, ParameterGroup, parse_pauli
from paulitree.routing import Layout, baseline_route, merge_to_root
from paulitree.synthesis import Circuit, Gate

arch = xtree("XTree17Q")
layout = Layout([8, 1, 9, 5], 17)
a = Ansatz(4, (ParameterGroup(0, ((parse_pauli("ZZZZ"), 1.0),)),))

circuit, stats = merge_to_root(a, arch, layout, [0.3])
print(f"layout (logical -> physical): {layout.l2p}")
print(f"Merge-to-Root: left-tree swaps={stats.per_string[0]['left_swaps']}, total swaps={stats.added_swap_count}")
for g in circuit.gates:
    print("   ", g.kind, g.qubits, "" if g.angle is None else g.angle)

chain = Circuit(4, (Gate("CNOT", (0, 1)), Gate("CNOT", (1, 2)), Gate("CNOT", (2, 3))))
_, base = baseline_route(chain, arch, layout)
print(f"generic router on the left CNOT chain: swaps={base.added_swap_count}")
