"""Added CNOTs per compression ratio on the tree and grid devices (small spaces)."""

from paulitree import bench

rows = bench.cmd_table2([(4, 2), (6, 2), (8, 2)], [0.1, 0.5, 1.0], "XTree17Q", "Grid17Q", {}, seed=0)
print(bench.render([r.to_dict(False) for r in rows], "csv"), end="")
