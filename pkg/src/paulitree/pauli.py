"""Pauli-string IR: strings, Hamiltonians, parameter groups and ansatzes.

Text form follows the usual convention ``G_{n-1} ... G_1 G_0``: the leftmost
character acts on the highest-index qubit. Internally ``ops[i]`` is the
operator on qubit ``i``; conversion happens only in :func:`parse_pauli` and
:attr:`PauliString.label`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    EmptyStringError,
    InvalidCharacterError,
    QubitCountMismatch,
    SchemaError,
    ValidationError,
)

PAULI_CHARS = "IXYZ"


@dataclass(frozen=True)
class PauliString:
    """Immutable Pauli string; ``ops[i]`` is the operator on qubit ``i``."""

    ops: tuple[str, ...]

    def __post_init__(self):
        ops = tuple(self.ops)
        if not ops:
            raise EmptyStringError("Pauli string must act on at least one qubit")
        for i, op in enumerate(ops):
            if op not in PAULI_CHARS or len(op) != 1:
                # report the position in text form
                raise InvalidCharacterError(op, len(ops) - 1 - i)
        object.__setattr__(self, "ops", ops)

    @property
    def n(self) -> int:
        return len(self.ops)

    @cached_property
    def label(self) -> str:
        return "".join(reversed(self.ops))

    @cached_property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, op in enumerate(self.ops) if op != "I")

    @cached_property
    def x_mask(self) -> int:
        return sum(1 << i for i, op in enumerate(self.ops) if op in "XY")

    @cached_property
    def z_mask(self) -> int:
        return sum(1 << i for i, op in enumerate(self.ops) if op in "ZY")

    @property
    def is_identity(self) -> bool:
        return not self.support

    def __getitem__(self, qubit: int) -> str:
        return self.ops[qubit]

    def __len__(self) -> int:
        return len(self.ops)

    def __str__(self) -> str:
        return self.label

    def __repr__(self) -> str:
        return f"PauliString({self.label!r})"

    @classmethod
    def from_label(cls, text: str) -> "PauliString":
        return parse_pauli(text)

    @classmethod
    def from_ops(cls, n: int, ops: dict[int, str]) -> "PauliString":
        """Build an ``n``-qubit string from a sparse ``{qubit: op}`` map."""
        full = ["I"] * n
        for q, op in ops.items():
            full[q] = op
        return cls(tuple(full))


def parse_pauli(text: str) -> PauliString:
    if not text:
        raise EmptyStringError("empty Pauli string")
    for pos, ch in enumerate(text):
        if ch not in PAULI_CHARS:
            raise InvalidCharacterError(ch, pos)
    return PauliString(tuple(reversed(text)))


def weight(p: PauliString) -> int:
    """Number of non-identity operators."""
    return len(p.support)


def _check_weight(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(path, f"expected a real number, got {value!r}")
    if not math.isfinite(value):
        raise SchemaError(path, "weight must be finite")
    return float(value)


@dataclass(frozen=True)
class HamiltonianTerm:
    pauli: PauliString
    weight: float


@dataclass(frozen=True)
class Hamiltonian:
    """Weighted sum of Pauli strings, ``H = sum_j w_j P_j`` (Hartree)."""

    n: int
    terms: tuple[HamiltonianTerm, ...] = ()

    def __post_init__(self):
        terms = tuple(
            t if isinstance(t, HamiltonianTerm) else HamiltonianTerm(t[0], float(t[1]))
            for t in self.terms
        )
        for j, t in enumerate(terms):
            if t.pauli.n != self.n:
                raise QubitCountMismatch(
                    f"term {j} ({t.pauli.label}) acts on {t.pauli.n} qubits, expected {self.n}"
                )
            if not math.isfinite(t.weight):
                raise ValidationError(f"term {j} has non-finite weight")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_labels(cls, pairs: Iterable[tuple[str, float]]) -> "Hamiltonian":
        pairs = [(parse_pauli(s), w) for s, w in pairs]
        if not pairs:
            raise ValidationError("cannot infer qubit count from an empty term list")
        return cls(pairs[0][0].n, tuple(HamiltonianTerm(p, float(w)) for p, w in pairs))

    def __len__(self):
        return len(self.terms)

    def scaled(self, factor: float) -> "Hamiltonian":
        return Hamiltonian(self.n, tuple(HamiltonianTerm(t.pauli, t.weight * factor) for t in self.terms))


@dataclass(frozen=True)
class ParameterGroup:
    """Pauli strings sharing one variational parameter.

    The group implements ``prod_k exp(-i * theta * coeff_k * P_k)``.
    """

    param_id: int
    terms: tuple[tuple[PauliString, float], ...]

    def __post_init__(self):
        terms = tuple((p, float(c)) for p, c in self.terms)
        if not terms:
            raise ValidationError(f"parameter group {self.param_id} has no terms")
        n = terms[0][0].n
        for p, c in terms:
            if p.n != n:
                raise QubitCountMismatch(f"group {self.param_id}: mixed qubit counts")
            if not math.isfinite(c):
                raise ValidationError(f"group {self.param_id}: non-finite coefficient")
        object.__setattr__(self, "terms", terms)

    @property
    def n(self) -> int:
        return self.terms[0][0].n

    @property
    def strings(self) -> list[PauliString]:
        return [p for p, _ in self.terms]


@dataclass(frozen=True)
class Ansatz:
    n: int
    groups: tuple[ParameterGroup, ...] = ()
    initial_occupations: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        groups = tuple(self.groups)
        seen = set()
        for g in groups:
            if g.n != self.n:
                raise QubitCountMismatch(f"group {g.param_id} acts on {g.n} qubits, expected {self.n}")
            if g.param_id in seen:
                raise ValidationError(f"duplicate param_id {g.param_id}")
            seen.add(g.param_id)
        occ = frozenset(int(q) for q in self.initial_occupations)
        for q in occ:
            if not 0 <= q < self.n:
                raise ValidationError(f"occupation index {q} out of range for {self.n} qubits")
        object.__setattr__(self, "groups", groups)
        object.__setattr__(self, "initial_occupations", occ)

    @property
    def num_parameters(self) -> int:
        return len(self.groups)

    @property
    def param_ids(self) -> list[int]:
        return [g.param_id for g in self.groups]

    def strings(self) -> list[PauliString]:
        """All Pauli strings in execution order."""
        return [p for g in self.groups for p, _ in g.terms]

    def num_strings(self) -> int:
        return sum(len(g.terms) for g in self.groups)

    def with_groups(self, groups: Sequence[ParameterGroup]) -> "Ansatz":
        return Ansatz(self.n, tuple(groups), self.initial_occupations)


# JSON I/O -------------------------------------------------------------------


def _require(obj, key, path, kind):
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected an object")
    if key not in obj:
        raise SchemaError(f"{path}.{key}", "missing field")
    value = obj[key]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise SchemaError(f"{path}.{key}", f"expected integer, got {value!r}")
    if kind is list and not isinstance(value, list):
        raise SchemaError(f"{path}.{key}", "expected array")
    if kind is str and not isinstance(value, str):
        raise SchemaError(f"{path}.{key}", "expected string")
    return value


def _parse_string_field(obj, path, n):
    text = _require(obj, "pauli", path, str)
    try:
        p = parse_pauli(text)
    except ValidationError as exc:
        raise SchemaError(f"{path}.pauli", str(exc)) from exc
    if p.n != n:
        raise QubitCountMismatch(f"{path}.pauli: {text!r} has {p.n} qubits, expected num_qubits={n}")
    return p


def hamiltonian_from_dict(data: dict) -> Hamiltonian:
    n = _require(data, "num_qubits", "$", int)
    if n < 1:
        raise SchemaError("$.num_qubits", "must be positive")
    terms = []
    for j, t in enumerate(_require(data, "terms", "$", list)):
        path = f"$.terms[{j}]"
        p = _parse_string_field(t, path, n)
        w = _check_weight(_require(t, "weight", path, None), f"{path}.weight")
        terms.append(HamiltonianTerm(p, w))
    return Hamiltonian(n, tuple(terms))


def hamiltonian_to_dict(h: Hamiltonian) -> dict:
    return {
        "num_qubits": h.n,
        "terms": [{"pauli": t.pauli.label, "weight": t.weight} for t in h.terms],
    }


def ansatz_from_dict(data: dict) -> Ansatz:
    n = _require(data, "num_qubits", "$", int)
    if n < 1:
        raise SchemaError("$.num_qubits", "must be positive")
    occ = _require(data, "hf_occupations", "$", list)
    for k, q in enumerate(occ):
        if isinstance(q, bool) or not isinstance(q, int) or not 0 <= q < n:
            raise SchemaError(f"$.hf_occupations[{k}]", f"invalid qubit index {q!r}")
    groups = []
    for g_idx, g in enumerate(_require(data, "groups", "$", list)):
        path = f"$.groups[{g_idx}]"
        pid = _require(g, "param_id", path, int)
        terms = []
        raw_terms = _require(g, "terms", path, list)
        if not raw_terms:
            raise SchemaError(f"{path}.terms", "group must contain at least one term")
        for t_idx, t in enumerate(raw_terms):
            tpath = f"{path}.terms[{t_idx}]"
            p = _parse_string_field(t, tpath, n)
            c = _check_weight(_require(t, "coeff", tpath, None), f"{tpath}.coeff")
            terms.append((p, c))
        groups.append(ParameterGroup(pid, tuple(terms)))
    try:
        return Ansatz(n, tuple(groups), frozenset(occ))
    except QubitCountMismatch:
        raise
    except ValidationError as exc:
        raise SchemaError("$.groups", str(exc)) from exc


def ansatz_to_dict(a: Ansatz) -> dict:
    return {
        "num_qubits": a.n,
        "hf_occupations": sorted(a.initial_occupations),
        "groups": [
            {
                "param_id": g.param_id,
                "terms": [{"pauli": p.label, "coeff": c} for p, c in g.terms],
            }
            for g in a.groups
        ],
    }


def dumps(data: dict) -> str:
    """Canonical JSON text. Floats use Python's shortest round-trip repr,
    so save/load is bit-exact."""
    return json.dumps(data, indent=2) + "\n"


def _load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from exc


def load_hamiltonian(path) -> Hamiltonian:
    return hamiltonian_from_dict(_load_json(path))


def save_hamiltonian(h: Hamiltonian, path) -> None:
    Path(path).write_text(dumps(hamiltonian_to_dict(h)))


def load_ansatz(path) -> Ansatz:
    return ansatz_from_dict(_load_json(path))


def save_ansatz(a: Ansatz, path) -> None:
    Path(path).write_text(dumps(ansatz_to_dict(a)))
