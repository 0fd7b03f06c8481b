"""Pauli-string time-evolution circuits with an arbitrary CNOT tree."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Sequence

from .errors import ArityMismatch, EmptySupport, TreeSupportMismatch, ValidationError
from .pauli import Ansatz, PauliString

GATE_KINDS = ("X", "H", "RX", "RZ", "CNOT", "SWAP")
_ARITY = {"X": 1, "H": 1, "RX": 1, "RZ": 1, "CNOT": 2, "SWAP": 2}


@dataclass(frozen=True)
class Gate:
    """One gate. Parameterised RZ gates remember which ansatz parameter drives
    them: ``angle = scale * params[param]``."""

    kind: str
    qubits: tuple[int, ...]
    angle: float | None = None
    param: int | None = None
    scale: float = 0.0

    def __post_init__(self):
        if self.kind not in _ARITY:
            raise ValidationError(f"unknown gate kind {self.kind!r}")
        qubits = tuple(int(q) for q in self.qubits)
        if len(qubits) != _ARITY[self.kind]:
            raise ValidationError(f"{self.kind} takes {_ARITY[self.kind]} qubit(s), got {qubits}")
        if len(set(qubits)) != len(qubits):
            raise ValidationError(f"{self.kind} on repeated qubit {qubits}")
        object.__setattr__(self, "qubits", qubits)
        if self.kind in ("RX", "RZ") and self.angle is None:
            raise ValidationError(f"{self.kind} needs an angle")


@dataclass(frozen=True)
class Circuit:
    n: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        gates = tuple(self.gates)
        for g in gates:
            for q in g.qubits:
                if not 0 <= q < self.n:
                    raise ValidationError(f"gate {g.kind} on qubit {q} outside 0..{self.n - 1}")
        object.__setattr__(self, "gates", gates)

    @property
    def stats(self) -> Counter:
        return Counter(g.kind for g in self.gates)

    def cnot_count(self, expand_swaps: bool = True) -> int:
        s = self.stats
        return s["CNOT"] + (3 * s["SWAP"] if expand_swaps else 0)

    def __len__(self) -> int:
        return len(self.gates)

    def __add__(self, other: "Circuit") -> "Circuit":
        if other.n != self.n:
            raise ValidationError("cannot concatenate circuits of different width")
        return Circuit(self.n, self.gates + other.gates)

    def bind(self, values: Sequence[float]) -> "Circuit":
        """Substitute parameter values into every parameterised gate."""
        values = list(values)
        needed = max((g.param for g in self.gates if g.param is not None), default=-1) + 1
        if len(values) < needed:
            raise ArityMismatch(f"circuit uses {needed} parameters, got {len(values)} values")
        return Circuit(
            self.n,
            tuple(
                replace(g, angle=g.scale * values[g.param]) if g.param is not None else g
                for g in self.gates
            ),
        )

    def inverse(self) -> "Circuit":
        inv = []
        for g in reversed(self.gates):
            if g.kind in ("RX", "RZ"):
                inv.append(replace(g, angle=-g.angle, scale=-g.scale))
            else:
                inv.append(g)
        return Circuit(self.n, tuple(inv))


@dataclass(frozen=True)
class CnotTree:
    """Spanning tree over the support of a Pauli string; parity flows
    child -> parent and ends on ``root``."""

    root: int
    parent: dict[int, int] = field(default_factory=dict)

    @property
    def nodes(self) -> frozenset[int]:
        return frozenset(self.parent) | {self.root}

    def depth(self, q: int) -> int:
        d = 0
        seen = set()
        while q != self.root:
            if q in seen or q not in self.parent:
                raise TreeSupportMismatch(f"node {q} does not reach the root")
            seen.add(q)
            q = self.parent[q]
            d += 1
        return d

    def edges_leaves_first(self) -> list[tuple[int, int]]:
        """(child, parent) pairs, deepest children first."""
        order = sorted(self.parent, key=lambda q: (-self.depth(q), q))
        return [(c, self.parent[c]) for c in order]


def chain_tree(p: PauliString) -> CnotTree:
    """Ascending chain over the support: ``q_a -> q_b -> ... -> root = max``."""
    support = p.support
    if not support:
        raise EmptySupport(f"{p.label} has no non-identity operator")
    parent = {a: b for a, b in zip(support, support[1:])}
    return CnotTree(support[-1], parent)


def star_tree(p: PauliString, root: int) -> CnotTree:
    support = p.support
    if root not in support:
        raise TreeSupportMismatch(f"root {root} not in support of {p.label}")
    return CnotTree(root, {q: root for q in support if q != root})


def basis_change(p: PauliString, qubits=None, closing: bool = False) -> list[Gate]:
    """H for X, RX(+pi/2) for Y (RX(-pi/2) when closing), nothing for Z."""
    gates = []
    for q in p.support:
        target = q if qubits is None else qubits[q]
        if p.ops[q] == "X":
            gates.append(Gate("H", (target,)))
        elif p.ops[q] == "Y":
            gates.append(Gate("RX", (target,), angle=-math.pi / 2 if closing else math.pi / 2))
    return gates


def _rz(root: int, theta: float, param, coeff) -> Gate:
    if param is None:
        return Gate("RZ", (root,), angle=2.0 * theta)
    return Gate("RZ", (root,), angle=2.0 * theta, param=param, scale=2.0 * coeff)


def synthesize_gates(p: PauliString, theta: float, tree: CnotTree, param=None, coeff=0.0) -> list[Gate]:
    if tree.nodes != frozenset(p.support):
        raise TreeSupportMismatch(
            f"tree over {sorted(tree.nodes)} does not span support {list(p.support)} of {p.label}"
        )
    cnots = [Gate("CNOT", (c, par)) for c, par in tree.edges_leaves_first()]
    return (
        basis_change(p)
        + cnots
        + [_rz(tree.root, theta, param, coeff)]
        + cnots[::-1]
        + basis_change(p, closing=True)
    )


def synthesize(p: PauliString, theta: float, tree: CnotTree | None = None) -> Circuit:
    """Circuit for ``exp(-i theta P)``; defaults to the chain tree."""
    if tree is None:
        tree = chain_tree(p)
    return Circuit(p.n, tuple(synthesize_gates(p, theta, tree)))


def hf_gates(a: Ansatz, qubits=None) -> list[Gate]:
    return [Gate("X", (q if qubits is None else qubits[q],)) for q in sorted(a.initial_occupations)]


def synthesize_ansatz_baseline(a: Ansatz, values: Sequence[float] | None = None) -> Circuit:
    """HF X gates followed by every term, chain-synthesised, on logical qubits.

    ``values`` holds one number per group (zeros when omitted); the term
    ``(P, coeff)`` of group ``g`` becomes ``exp(-i values[g] coeff P)``.
    """
    if values is None:
        values = [0.0] * a.num_parameters
    values = list(values)
    if len(values) != a.num_parameters:
        raise ArityMismatch(f"ansatz has {a.num_parameters} parameters, got {len(values)} values")
    gates = hf_gates(a)
    for g_idx, group in enumerate(a.groups):
        for p, coeff in group.terms:
            if p.is_identity:
                continue
            gates += synthesize_gates(p, values[g_idx] * coeff, chain_tree(p), param=g_idx, coeff=coeff)
    return Circuit(a.n, tuple(gates))


def string_gate_count(p: PauliString) -> tuple[int, int]:
    """(total gates, CNOTs) of a chain-synthesised string."""
    w = len(p.support)
    if w == 0:
        return 0, 0
    xy = sum(op in "XY" for op in p.ops)
    return 2 * xy + 2 * (w - 1) + 1, 2 * (w - 1)
