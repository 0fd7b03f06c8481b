"""Structural summary of the built-in devices."""

from paulitree import bench

print(bench.render(bench.cmd_arch_report(), "csv"), end="")
print()
print(bench.render(bench.cmd_table1(), "csv"), end="")
