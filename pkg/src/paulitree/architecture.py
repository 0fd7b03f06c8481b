"""Coupling-graph architectures: X-Tree family and general graphs."""

from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import DegreeBoundViolated, DisconnectedGraph, DuplicateEdge, SchemaError, ValidationError

MAX_ROOT_CHILDREN = 4
MAX_CHILDREN = 3

# children per node in breadth-first order; node ids follow the same order
XTREE_SPECS = {
    "XTree5Q": (4,),
    "XTree8Q": (4, 3),
    "XTree17Q": (4, 3, 3, 3, 3),
    # not fixed by any textual rule: three extra leaves on three level-2 qubits
    "XTree26Q": (4, 3, 3, 3, 3, 3, 0, 0, 3, 0, 0, 3),
}


@dataclass(frozen=True, eq=False)
class Architecture:
    num_qubits: int
    edges: frozenset[tuple[int, int]]
    name: str = ""
    root: int | None = None

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        adj = [[] for _ in range(self.num_qubits)]
        for a, b in sorted(self.edges):
            adj[a].append(b)
            adj[b].append(a)
        return tuple(tuple(sorted(x)) for x in adj)

    def adjacent(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edges

    @property
    def is_tree(self) -> bool:
        return len(self.edges) == self.num_qubits - 1

    @cached_property
    def parent(self) -> tuple[int | None, ...] | None:
        if not self.is_tree or self.root is None:
            return None
        par: list[int | None] = [None] * self.num_qubits
        seen = {self.root}
        queue = deque([self.root])
        while queue:
            u = queue.popleft()
            for v in self.neighbors[u]:
                if v not in seen:
                    seen.add(v)
                    par[v] = u
                    queue.append(v)
        return tuple(par)

    @cached_property
    def levels(self) -> tuple[int, ...] | None:
        if self.parent is None:
            return None
        return tuple(int(d) for d in self.distances[self.root])

    @property
    def depth(self) -> int:
        return max(self.levels) + 1 if self.levels else 0

    def children(self, q: int) -> tuple[int, ...]:
        par = self.parent
        return tuple(v for v in self.neighbors[q] if par[v] == q)

    @cached_property
    def distances(self) -> np.ndarray:
        rows, cols = zip(*self.edges) if self.edges else ((), ())
        m = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(self.num_qubits,) * 2)
        d = shortest_path(m, directed=False, unweighted=True)
        if np.isinf(d).any():
            raise DisconnectedGraph(f"{self.name or 'graph'} is not connected")
        return d.astype(int)

    def distance(self, u: int, v: int) -> int:
        return int(self.distances[u, v])

    def connection_count(self) -> int:
        return len(self.edges)

    def degree(self, q: int) -> int:
        return len(self.neighbors[q])

    def degree_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(self.degree(q) for q in range(self.num_qubits)).items()))

    def to_dict(self) -> dict:
        out = {"num_qubits": self.num_qubits, "edges": [list(e) for e in sorted(self.edges)]}
        if self.root is not None:
            out["root"] = self.root
        return out


def _normalise_edges(num_qubits, edges):
    seen = set()
    for e in edges:
        if len(e) != 2:
            raise SchemaError("$.edges", f"edge {e!r} must have two endpoints")
        a, b = (int(x) for x in e)
        if a == b:
            raise ValidationError(f"self-loop on qubit {a}")
        if not (0 <= a < num_qubits and 0 <= b < num_qubits):
            raise ValidationError(f"edge ({a}, {b}) outside 0..{num_qubits - 1}")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise DuplicateEdge(f"edge {key} listed twice")
        seen.add(key)
    return frozenset(seen)


def _tree_center(arch: Architecture) -> int:
    ecc = arch.distances.max(axis=1)
    return int(np.argmin(ecc))


def make_architecture(num_qubits: int, edges, name: str = "", root: int | None = None) -> Architecture:
    if num_qubits < 1:
        raise ValidationError("architecture needs at least one qubit")
    arch = Architecture(num_qubits, _normalise_edges(num_qubits, edges), name, None)
    arch.distances  # raises on disconnected graphs
    if arch.is_tree:
        if root is None:
            root = _tree_center(arch)
        elif not 0 <= root < num_qubits:
            raise ValidationError(f"root {root} outside 0..{num_qubits - 1}")
        arch = Architecture(num_qubits, arch.edges, name, int(root))
    return arch


def build_xtree(children_per_node: Sequence[int], name: str = "") -> Architecture:
    """Tree grown breadth-first: node ``i`` receives ``children_per_node[i]``
    children (missing entries mean leaves). The root may have four children,
    every other node three, so no qubit exceeds four couplings."""
    counts = list(children_per_node)
    edges = []
    nxt = 1
    i = 0
    while i < nxt:
        k = counts[i] if i < len(counts) else 0
        limit = MAX_ROOT_CHILDREN if i == 0 else MAX_CHILDREN
        if k < 0 or k > limit:
            raise DegreeBoundViolated(f"node {i} asks for {k} children; at most {limit} allowed")
        for _ in range(k):
            edges.append((i, nxt))
            nxt += 1
        i += 1
    if any(c for c in counts[nxt:]):
        raise ValidationError("children listed for nodes that do not exist")
    return make_architecture(nxt, edges, name=name, root=0)


def xtree(name: str) -> Architecture:
    try:
        spec = XTREE_SPECS[name]
    except KeyError:
        raise ValidationError(f"unknown X-Tree {name!r}; choose from {sorted(XTREE_SPECS)}") from None
    return build_xtree(spec, name=name)


def architecture_from_dict(data: dict, name: str = "") -> Architecture:
    if not isinstance(data, dict) or "num_qubits" not in data or "edges" not in data:
        raise SchemaError("$", "expected {num_qubits, edges}")
    n = data["num_qubits"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise SchemaError("$.num_qubits", "expected integer")
    if not isinstance(data["edges"], list):
        raise SchemaError("$.edges", "expected array")
    return make_architecture(n, data["edges"], name=name, root=data.get("root"))


def load_graph(path) -> Architecture:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from exc
    return architecture_from_dict(data, name=path.stem)


def grid17q() -> Architecture:
    data = json.loads(resources.files("paulitree.data").joinpath("grid17q.json").read_text())
    return architecture_from_dict(data, name="Grid17Q")


def get_architecture(name_or_path: str) -> Architecture:
    """Resolve a bundled name (``XTree17Q``, ``Grid17Q``...) or a JSON path."""
    if name_or_path in XTREE_SPECS:
        return xtree(name_or_path)
    if name_or_path.lower() == "grid17q":
        return grid17q()
    return load_graph(name_or_path)
