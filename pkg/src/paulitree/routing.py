"""Qubit layout and routing.

* :func:`hierarchical_layout` places frequently co-occurring logical qubits on
  low levels of a tree architecture.
* :func:`merge_to_root` synthesises every Pauli string directly on the tree,
  percolating active qubits towards the root and inserting SWAPs only where a
  parent is not part of the string.
* :func:`baseline_route` is a generic greedy look-ahead router for already
  synthesised circuits, used as the comparison point.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .architecture import Architecture
from .errors import (
    ArityMismatch,
    CapacityExceeded,
    DisconnectedGraph,
    LayoutMismatch,
    NotATree,
    ValidationError,
)
from .pauli import Ansatz, PauliString
from .synthesis import Circuit, Gate, basis_change, hf_gates, string_gate_count

EMPTY = -1


class Layout:
    """Logical -> physical bijection with its inverse. Physical slots without
    a logical qubit hold ``EMPTY``."""

    def __init__(self, l2p: Sequence[int], num_physical: int):
        l2p = [int(p) for p in l2p]
        if len(l2p) > num_physical:
            raise CapacityExceeded(f"{len(l2p)} logical qubits do not fit on {num_physical} physical")
        p2l = [EMPTY] * num_physical
        for q, p in enumerate(l2p):
            if not 0 <= p < num_physical:
                raise LayoutMismatch(f"logical {q} mapped outside the device ({p})")
            if p2l[p] != EMPTY:
                raise LayoutMismatch(f"physical {p} assigned twice")
            p2l[p] = q
        self.l2p = l2p
        self.p2l = p2l

    @classmethod
    def trivial(cls, num_logical: int, num_physical: int) -> "Layout":
        return cls(list(range(num_logical)), num_physical)

    @property
    def num_logical(self) -> int:
        return len(self.l2p)

    @property
    def num_physical(self) -> int:
        return len(self.p2l)

    def copy(self) -> "Layout":
        return Layout(self.l2p, self.num_physical)

    def swap_physical(self, a: int, b: int) -> None:
        la, lb = self.p2l[a], self.p2l[b]
        self.p2l[a], self.p2l[b] = lb, la
        if la != EMPTY:
            self.l2p[la] = b
        if lb != EMPTY:
            self.l2p[lb] = a

    def __eq__(self, other):
        return isinstance(other, Layout) and self.l2p == other.l2p and self.num_physical == other.num_physical

    def __repr__(self):
        return f"Layout({self.l2p}, num_physical={self.num_physical})"


@dataclass
class CompileStats:
    original_cnots: int
    added_swap_count: int
    initial_layout: Layout
    final_layout: Layout
    per_string: list[dict] = field(default_factory=list)

    @property
    def added_cnots(self) -> int:
        return 3 * self.added_swap_count

    @property
    def total_cnots(self) -> int:
        return self.original_cnots + self.added_cnots

    def to_dict(self) -> dict:
        return {
            "original_cnots": self.original_cnots,
            "swaps": self.added_swap_count,
            "added_cnots": self.added_cnots,
            "total_cnots": self.total_cnots,
        }


# Layout -----------------------------------------------------------------------


def cooccurrence_matrix(strings: Sequence[PauliString], n: int | None = None) -> np.ndarray:
    """``Mat[j, k]`` = number of strings whose support holds both ``j`` and ``k``."""
    if n is None:
        if not strings:
            raise ValidationError("qubit count needed for an empty string list")
        n = strings[0].n
    mat = np.zeros((n, n), dtype=int)
    for p in strings:
        if p.n != n:
            raise ValidationError(f"{p.label} does not act on {n} qubits")
        s = np.array(p.support, dtype=int)
        if len(s) > 1:
            mat[np.ix_(s, s)] += 1
    np.fill_diagonal(mat, 0)
    return mat


def _require_tree(arch: Architecture) -> None:
    if not arch.is_tree or arch.levels is None:
        raise NotATree(f"{arch.name or 'architecture'} is not a rooted tree")


def hierarchical_layout(strings: Sequence[PauliString], arch: Architecture, n: int | None = None) -> Layout:
    _require_tree(arch)
    mat = cooccurrence_matrix(strings, n)
    n = mat.shape[0]
    if n > arch.num_qubits:
        raise CapacityExceeded(f"{n} logical qubits do not fit on {arch.num_qubits} physical")
    occurrence = mat.sum(axis=1)
    order = sorted(range(n), key=lambda j: (-occurrence[j], j))
    levels = arch.levels
    parent = arch.parent
    free = set(range(arch.num_qubits))
    p2l = {}
    l2p = [EMPTY] * n
    for j in order:
        lowest = min(levels[p] for p in free)
        slots = sorted(p for p in free if levels[p] == lowest)

        def affinity(slot):
            par = parent[slot]
            if par is None or par not in p2l:
                return 0
            return mat[j, p2l[par]]

        best = max(slots, key=lambda s: (affinity(s), -s))
        l2p[j] = best
        p2l[best] = j
        free.remove(best)
    return Layout(l2p, arch.num_qubits)


# Merge-to-Root ------------------------------------------------------------------


def _ansatz_terms(a: Ansatz):
    for g_idx, group in enumerate(a.groups):
        for p, coeff in group.terms:
            if not p.is_identity:
                yield g_idx, p, coeff


def merge_to_root(
    a: Ansatz,
    arch: Architecture,
    initial: Layout,
    values: Sequence[float] | None = None,
) -> tuple[Circuit, CompileStats]:
    """Synthesise and route ``a`` on a tree architecture in one pass.

    The returned circuit acts on physical qubits; ``stats.final_layout`` gives
    where every logical qubit ends up.
    """
    _require_tree(arch)
    if initial.num_physical != arch.num_qubits or initial.num_logical != a.n:
        raise LayoutMismatch(
            f"layout maps {initial.num_logical} logical onto {initial.num_physical} physical; "
            f"expected {a.n} onto {arch.num_qubits}"
        )
    if values is None:
        values = [0.0] * a.num_parameters
    values = list(values)
    if len(values) != a.num_parameters:
        raise ArityMismatch(f"ansatz has {a.num_parameters} parameters, got {len(values)} values")

    levels, parent = arch.levels, arch.parent
    depth = arch.depth
    layout = initial.copy()
    terms = list(_ansatz_terms(a))

    remaining = np.zeros(a.n, dtype=int)
    for _, p, _ in terms:
        remaining[list(p.support)] += 1

    gates: list[Gate] = hf_gates(a, layout.l2p)
    per_string = []
    original = 0
    swaps_total = 0

    for g_idx, p, coeff in terms:
        remaining[list(p.support)] -= 1
        start = list(layout.l2p)
        active = {layout.l2p[q] for q in p.support}
        gates += basis_change(p, layout.l2p)

        left: list[tuple[str, int, int]] = []
        for k in range(depth - 1, 0, -1):
            if len(active) == 1:
                break
            at_level = sorted(q for q in active if levels[q] == k)
            if not at_level:
                continue
            for par in sorted({parent[q] for q in at_level}):
                if par in active:
                    continue
                kids = [c for c in at_level if parent[c] == par]
                chosen = min(kids, key=lambda c: (-remaining[layout.p2l[c]], layout.p2l[c]))
                left.append(("SWAP", chosen, par))
                layout.swap_physical(chosen, par)
                active.discard(chosen)
                active.add(par)
                at_level.remove(chosen)
            for q in at_level:
                left.append(("CNOT", q, parent[q]))
                active.discard(q)
        (root,) = active

        left_swaps = sum(op[0] == "SWAP" for op in left)
        gates += [Gate(kind, (u, v)) for kind, u, v in left]
        gates.append(Gate("RZ", (root,), angle=2.0 * values[g_idx] * coeff, param=g_idx, scale=2.0 * coeff))

        # Undo the left tree. Inverse SWAPs are deferred: ``where`` maps an
        # ideal position to the physical qubit currently holding its content,
        # and deferred SWAPs are only replayed once a CNOT would otherwise
        # fall on a non-edge.
        where = list(range(arch.num_qubits))
        deferred: list[tuple[int, int]] = []
        right_swaps = 0
        for kind, u, v in reversed(left):
            if kind == "SWAP":
                deferred.append((u, v))
                where[u], where[v] = where[v], where[u]
                continue
            cu, cv = where[u], where[v]
            if not arch.adjacent(cu, cv):
                for s in deferred:
                    gates.append(Gate("SWAP", s))
                right_swaps += len(deferred)
                deferred.clear()
                where = list(range(arch.num_qubits))
                cu, cv = u, v
            gates.append(Gate("CNOT", (cu, cv)))
        gates += basis_change(p, [where[x] for x in start], closing=True)

        # logical qubit q sat at ideal position start[q]
        new_l2p = [where[start[q]] for q in range(a.n)]
        layout = Layout(new_l2p, arch.num_qubits)

        _, cnots = string_gate_count(p)
        original += cnots
        swaps_total += left_swaps + right_swaps
        per_string.append(
            {"pauli": p.label, "group": g_idx, "left_swaps": left_swaps, "right_swaps": right_swaps, "cnots": cnots}
        )

    circuit = Circuit(arch.num_qubits, tuple(gates))
    stats = CompileStats(original, swaps_total, initial.copy(), layout, per_string)
    return circuit, stats


# Baseline router ------------------------------------------------------------------

LOOKAHEAD = 20
LOOKAHEAD_WEIGHT = 0.5


def baseline_route(circuit: Circuit, arch: Architecture, initial: Layout) -> tuple[Circuit, CompileStats]:
    """Greedy look-ahead SWAP insertion for a logical-qubit circuit.

    Ready gates run whenever their qubits are adjacent. Otherwise the SWAP
    (on an edge touching a blocked front gate) minimising front distance plus
    0.5 x the distance of the next 20 two-qubit gates is inserted, ties going
    to the lexicographically smallest edge. If that stalls, the first blocked
    gate is walked along a shortest path.
    """
    if initial.num_physical != arch.num_qubits or initial.num_logical != circuit.n:
        raise LayoutMismatch(
            f"layout maps {initial.num_logical} logical onto {initial.num_physical} physical; "
            f"circuit has {circuit.n} qubits on a {arch.num_qubits}-qubit device"
        )
    dist = arch.distances  # raises DisconnectedGraph
    layout = initial.copy()
    gates = circuit.gates
    queues = [deque() for _ in range(circuit.n)]
    for i, g in enumerate(gates):
        for q in g.qubits:
            queues[q].append(i)
    two_qubit = [i for i, g in enumerate(gates) if len(g.qubits) == 2]
    done = [False] * len(gates)
    out: list[Gate] = []
    swaps = 0
    tq_ptr = 0
    stall = 0
    stall_limit = 2 * int(dist.max()) + 2
    diameter_edges = sorted(arch.edges)

    def emit(i):
        g = gates[i]
        out.append(Gate(g.kind, tuple(layout.l2p[q] for q in g.qubits), g.angle, g.param, g.scale))
        done[i] = True
        for q in g.qubits:
            queues[q].popleft()

    def do_swap(a, b):
        nonlocal swaps
        out.append(Gate("SWAP", (a, b)))
        layout.swap_physical(a, b)
        swaps += 1

    while True:
        # run everything runnable
        progressed = True
        while progressed:
            progressed = False
            for q in range(circuit.n):
                while queues[q]:
                    i = queues[q][0]
                    g = gates[i]
                    if len(g.qubits) == 1:
                        emit(i)
                        progressed = True
                        continue
                    a, b = g.qubits
                    other = b if a == q else a
                    if queues[other] and queues[other][0] == i and arch.adjacent(layout.l2p[a], layout.l2p[b]):
                        emit(i)
                        progressed = True
                        stall = 0
                        continue
                    break
        front = sorted(
            {queues[q][0] for q in range(circuit.n) if queues[q] and len(gates[queues[q][0]].qubits) == 2}
        )
        front = [i for i in front if all(queues[q] and queues[q][0] == i for q in gates[i].qubits)]
        if not front:
            break
        while tq_ptr < len(two_qubit) and done[two_qubit[tq_ptr]]:
            tq_ptr += 1
        front_set = set(front)
        extended = []
        j = tq_ptr
        while j < len(two_qubit) and len(extended) < LOOKAHEAD:
            i = two_qubit[j]
            if not done[i] and i not in front_set:
                extended.append(i)
            j += 1

        if stall >= stall_limit:
            # walk the first blocked gate's first qubit towards the second
            a, b = gates[front[0]].qubits
            pa, pb = layout.l2p[a], layout.l2p[b]
            while dist[pa, pb] > 1:
                step = min(v for v in arch.neighbors[pa] if dist[v, pb] == dist[pa, pb] - 1)
                do_swap(pa, step)
                pa = step
            stall = 0
            continue

        touched = {layout.l2p[q] for i in front for q in gates[i].qubits}
        candidates = [e for e in diameter_edges if e[0] in touched or e[1] in touched]
        best, best_score = None, None
        for e in candidates:
            x, y = e

            def pos(q):
                p = layout.l2p[q]
                return y if p == x else x if p == y else p

            score = sum(dist[pos(gates[i].qubits[0]), pos(gates[i].qubits[1])] for i in front)
            score += LOOKAHEAD_WEIGHT * sum(
                dist[pos(gates[i].qubits[0]), pos(gates[i].qubits[1])] for i in extended
            )
            if best_score is None or score < best_score - 1e-12:
                best, best_score = e, score
        do_swap(*best)
        stall += 1

    routed = Circuit(arch.num_qubits, tuple(out))
    stats = CompileStats(circuit.cnot_count(), swaps, initial.copy(), layout)
    return routed, stats


def route_ansatz_baseline(a: Ansatz, arch: Architecture, initial: Layout, values=None):
    """Chain-synthesise ``a`` on logical qubits, then route it."""
    from .synthesis import synthesize_ansatz_baseline

    return baseline_route(synthesize_ansatz_baseline(a, values), arch, initial)
