"""Hamiltonian-aware importance scoring and ansatz compression."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyAnsatz, LengthMismatch, RatioOutOfRange
from .pauli import Ansatz, Hamiltonian, ParameterGroup, PauliString


def decay_distance(pa: PauliString, ph: PauliString) -> int:
    """Count qubits where ``pa`` is I, ``ph`` is I, or both carry the same
    operator. Only positions with two different non-identity operators are
    left out."""
    if pa.n != ph.n:
        raise LengthMismatch(f"{pa.label} and {ph.label} act on different qubit counts")
    both = pa.x_mask | pa.z_mask
    both &= ph.x_mask | ph.z_mask
    differ = ((pa.x_mask ^ ph.x_mask) | (pa.z_mask ^ ph.z_mask)) & both
    return pa.n - bin(differ).count("1")


def parameter_importance(group: ParameterGroup, h: Hamiltonian) -> float:
    """Sum of ``2**-d * |w_H|`` over every (ansatz string, Hamiltonian term)
    pair. Group coefficients do not enter."""
    if h.terms and group.n != h.n:
        raise LengthMismatch(f"group acts on {group.n} qubits, Hamiltonian on {h.n}")
    # each contribution is exact (power-of-two scaling); fsum rounds the exact
    # total once, so tied scores stay bit-identical and ranking is order-free
    return math.fsum(
        2.0 ** (-decay_distance(pa, t.pauli)) * abs(t.weight) for pa, _ in group.terms for t in h.terms
    )


@dataclass(frozen=True)
class ImportanceReport:
    scores: dict[int, float]
    ranking: tuple[int, ...]

    def rows(self):
        """(param_id, score, rank) with rank starting at 1."""
        return [(pid, self.scores[pid], r + 1) for r, pid in enumerate(self.ranking)]

    def to_csv(self) -> str:
        lines = ["param_id,score,rank"]
        lines += [f"{pid},{score!r},{rank}" for pid, score, rank in self.rows()]
        return "\n".join(lines) + "\n"


def importance_report(a: Ansatz, h: Hamiltonian) -> ImportanceReport:
    scores = [parameter_importance(g, h) for g in a.groups]
    # stable sort keeps the original index order among equal scores
    order = sorted(range(len(scores)), key=lambda i: -scores[i])
    return ImportanceReport(
        {g.param_id: s for g, s in zip(a.groups, scores)},
        tuple(a.groups[i].param_id for i in order),
    )


def _num_kept(a: Ansatz, ratio: float) -> int:
    if not a.groups:
        raise EmptyAnsatz("cannot compress an ansatz with no parameters")
    if not (0.0 < ratio <= 1.0) or math.isnan(ratio):
        raise RatioOutOfRange(f"ratio must lie in (0, 1], got {ratio}")
    k = len(a.groups)
    # guard against 0.3 * 10 = 3.0000000000000004 style round-up
    return min(k, math.ceil(round(ratio * k, 9)))


def compress_ansatz(a: Ansatz, h: Hamiltonian, ratio: float) -> Ansatz:
    """Keep the top ``ceil(ratio * K)`` groups in importance-decreasing order."""
    keep = _num_kept(a, ratio)
    report = importance_report(a, h)
    by_id = {g.param_id: g for g in a.groups}
    return a.with_groups([by_id[pid] for pid in report.ranking[:keep]])


def random_compress(a: Ansatz, ratio: float, seed: int) -> Ansatz:
    """Uniformly random ``ceil(ratio * K)``-subset, original order kept."""
    keep = _num_kept(a, ratio)
    rng = np.random.default_rng(seed)
    chosen = sorted(rng.choice(len(a.groups), size=keep, replace=False).tolist())
    return a.with_groups([a.groups[i] for i in chosen])
