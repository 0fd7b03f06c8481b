"""Benchmark tables: UCCSD structure counts, mapping overhead, architecture metrics."""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import asdict, dataclass
from typing import Mapping, Sequence

from .architecture import Architecture, get_architecture
from .compress import compress_ansatz
from .hamiltonians import synthetic_hamiltonian
from .pauli import Hamiltonian
from .routing import Layout, hierarchical_layout, merge_to_root, route_ansatz_baseline
from .synthesis import synthesize_ansatz_baseline
from .uccsd import ActiveSpace, generate_uccsd

MOLECULES = (
    ("H2", 4, 2),
    ("LiH", 6, 2),
    ("NaH", 8, 2),
    ("HF", 10, 2),
    ("BeH2", 12, 4),
    ("H2O", 12, 4),
    ("BH3", 14, 6),
    ("NH3", 14, 6),
    ("CH4", 16, 8),
)
TABLE1_SPACES = tuple((n, eta) for _, n, eta in MOLECULES)
TABLE2_SPACES = ((4, 2), (6, 2), (8, 2), (10, 2), (12, 4))
TABLE2_RATIOS = (0.1, 0.3, 0.5, 0.7, 0.9)


def molecule_label(n: int, eta: int) -> str:
    names = [m for m, mn, me in MOLECULES if (mn, me) == (n, eta)]
    return "/".join(names) if names else f"n{n}e{eta}"


def render(rows: Sequence[dict], fmt: str = "csv") -> str:
    if fmt == "json":
        return json.dumps(list(rows), indent=2) + "\n"
    if not rows:
        return ""
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def table1_row(n: int, eta: int) -> dict:
    a = generate_uccsd(ActiveSpace(n, eta))
    c = synthesize_ansatz_baseline(a)
    return {
        "molecule": molecule_label(n, eta),
        "qubits": n,
        "pauli": a.num_strings(),
        "params": a.num_parameters,
        "gates": len(c),
        "cnots": c.cnot_count(),
    }


def cmd_table1(spaces: Sequence[tuple[int, int]] = TABLE1_SPACES) -> list[dict]:
    return [table1_row(n, eta) for n, eta in spaces]


@dataclass(frozen=True)
class BenchRow:
    molecule: str
    qubits: int
    ratio: float
    original_cnots: int
    mtr_added: int
    baseline_added: int
    baseline_grid_added: int
    hamiltonian: str
    runtime_ms: float | None = None

    def __post_init__(self):
        for v in (self.mtr_added, self.baseline_added, self.baseline_grid_added):
            if v < 0 or v % 3:
                raise ValueError(f"added CNOT count {v} is not a non-negative multiple of 3")

    def to_dict(self, with_runtime: bool = False) -> dict:
        d = asdict(self)
        if not with_runtime:
            d.pop("runtime_ms")
        return d


def table2_cell(a, h: Hamiltonian, ratio: float, tree: Architecture, grid: Architecture, label: str, source: str) -> BenchRow:
    t0 = time.perf_counter()
    c = compress_ansatz(a, h, ratio)
    original = synthesize_ansatz_baseline(c).cnot_count()
    layout = hierarchical_layout(c.strings(), tree, c.n)
    _, mtr = merge_to_root(c, tree, layout)
    _, base = route_ansatz_baseline(c, tree, layout)
    _, base_grid = route_ansatz_baseline(c, grid, Layout.trivial(c.n, grid.num_qubits))
    ms = (time.perf_counter() - t0) * 1000.0
    return BenchRow(label, c.n, ratio, original, mtr.added_cnots, base.added_cnots, base_grid.added_cnots, source, round(ms, 1))


def cmd_table2(
    spaces: Sequence[tuple[int, int]] = TABLE2_SPACES,
    ratios: Sequence[float] = TABLE2_RATIOS,
    arch: str = "XTree17Q",
    grid: str = "Grid17Q",
    hamiltonians: Mapping[tuple[int, int], Hamiltonian] | None = None,
    seed: int = 0,
) -> list[BenchRow]:
    """One row per (space, ratio), sorted by qubits, electrons, ratio.

    Spaces without a supplied Hamiltonian are scored against a seeded
    synthetic one; the ``hamiltonian`` column says which.
    """
    tree, mesh = get_architecture(arch), get_architecture(grid)
    hamiltonians = dict(hamiltonians or {})
    rows = []
    for n, eta in sorted(spaces):
        a = generate_uccsd(ActiveSpace(n, eta))
        if (n, eta) in hamiltonians:
            h, source = hamiltonians[(n, eta)], "supplied"
        else:
            h, source = synthetic_hamiltonian(a, seed), f"synthetic(seed={seed})"
        for ratio in sorted(ratios):
            rows.append(table2_cell(a, h, ratio, tree, mesh, molecule_label(n, eta), source))
    return rows


def arch_report_row(arch: Architecture) -> dict:
    d = arch.distances
    n = arch.num_qubits
    pairs = [int(d[i, j]) for i in range(n) for j in range(i + 1, n)]
    hist = arch.degree_histogram()
    return {
        "name": arch.name,
        "qubits": n,
        "edges": arch.connection_count(),
        "is_tree": arch.is_tree,
        "root": arch.root if arch.root is not None else "",
        "depth": arch.depth if arch.is_tree else "",
        "max_degree": max(hist),
        "degree_histogram": " ".join(f"{k}:{v}" for k, v in hist.items()),
        "diameter": max(pairs, default=0),
        "mean_distance": round(sum(pairs) / len(pairs), 6) if pairs else 0.0,
    }


def cmd_arch_report(names: Sequence[str] = ("XTree5Q", "XTree8Q", "XTree17Q", "XTree26Q", "Grid17Q")) -> list[dict]:
    return [arch_report_row(get_architecture(name)) for name in names]
