"""UCCSD ansatz generation under the Jordan-Wigner encoding.

Spin orbitals use the block layout: alpha orbitals on qubits ``0..m-1``,
beta orbitals on ``m..2m-1``. Each excitation ``T = a_virt^dag ... a_occ - h.c.``
is expanded into Pauli strings with a small operator algebra, and stored so
that ``T = -i * sum_k coeff_k P_k``; the group's circuit
``prod_k exp(-i theta coeff_k P_k)`` then equals ``exp(theta T)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import IndexOutOfRange, SpinBlockViolation, ValidationError
from .pauli import Ansatz, Hamiltonian, HamiltonianTerm, ParameterGroup, PauliString

# single-qubit products: (a, b) -> (phase, a*b)
_MUL = {
    ("I", "I"): (1, "I"), ("I", "X"): (1, "X"), ("I", "Y"): (1, "Y"), ("I", "Z"): (1, "Z"),
    ("X", "I"): (1, "X"), ("X", "X"): (1, "I"), ("X", "Y"): (1j, "Z"), ("X", "Z"): (-1j, "Y"),
    ("Y", "I"): (1, "Y"), ("Y", "X"): (-1j, "Z"), ("Y", "Y"): (1, "I"), ("Y", "Z"): (1j, "X"),
    ("Z", "I"): (1, "Z"), ("Z", "X"): (1j, "Y"), ("Z", "Y"): (-1j, "X"), ("Z", "Z"): (1, "I"),
}

_TOL = 1e-12


def _mul_ops(a: tuple, b: tuple):
    phase = 1
    out = []
    for x, y in zip(a, b):
        ph, z = _MUL[x, y]
        phase *= ph
        out.append(z)
    return phase, tuple(out)


def _op_product(left: dict, right: dict) -> dict:
    out: dict = {}
    for pa, ca in left.items():
        for pb, cb in right.items():
            ph, pc = _mul_ops(pa, pb)
            out[pc] = out.get(pc, 0) + ph * ca * cb
    return {p: c for p, c in out.items() if abs(c) > _TOL}


def _op_add(a: dict, b: dict, scale=1) -> dict:
    out = dict(a)
    for p, c in b.items():
        out[p] = out.get(p, 0) + scale * c
    return {p: c for p, c in out.items() if abs(c) > _TOL}


def _ladder(n: int, k: int, dagger: bool) -> dict:
    """Jordan-Wigner image of a_k (or a_k^dag) as ``{ops: coeff}``."""
    base = ["Z"] * k + ["I"] * (n - k)
    x = list(base)
    x[k] = "X"
    y = list(base)
    y[k] = "Y"
    sign = -0.5j if dagger else 0.5j
    return {tuple(x): 0.5, tuple(y): sign}


def fermion_product(n: int, factors) -> dict:
    """Pauli expansion of a product of ladder operators.

    ``factors`` is a sequence of ``(orbital, dagger)`` pairs, leftmost first.
    """
    out = {("I",) * n: 1.0}
    for k, dag in factors:
        out = _op_product(out, _ladder(n, k, dag))
    return out


def _excitation_group(param_id: int, n: int, creators, annihilators) -> ParameterGroup:
    forward = fermion_product(
        n, [(k, True) for k in creators] + [(k, False) for k in reversed(annihilators)]
    )
    backward = fermion_product(
        n, [(k, True) for k in annihilators] + [(k, False) for k in reversed(creators)]
    )
    generator = _op_add(forward, backward, scale=-1)
    terms = []
    for ops, c in generator.items():
        # T = -i * sum coeff P  =>  coeff = i * c, which must be real
        coeff = 1j * c
        if abs(coeff.imag) > _TOL:
            raise AssertionError("excitation generator is not anti-Hermitian")
        terms.append((PauliString(ops), float(coeff.real)))
    terms.sort(key=lambda t: t[0].label)
    return ParameterGroup(param_id, tuple(terms))


def _block(q: int, m: int) -> int:
    return 0 if q < m else 1


def _check_index(q, n):
    if not 0 <= q < n:
        raise IndexOutOfRange(f"orbital {q} outside 0..{n - 1}")


def single_excitation_group(p: int, q: int, n: int, param_id: int = 0) -> ParameterGroup:
    """Excitation ``a_q^dag a_p - a_p^dag a_q`` from occupied ``p`` to virtual ``q``."""
    if n % 2:
        raise ValidationError("number of spin orbitals must be even")
    _check_index(p, n)
    _check_index(q, n)
    if p >= q:
        raise IndexOutOfRange(f"single excitation requires p < q, got p={p}, q={q}")
    m = n // 2
    if _block(p, m) != _block(q, m):
        raise SpinBlockViolation(f"orbitals {p} and {q} lie in different spin blocks")
    return _excitation_group(param_id, n, [q], [p])


def double_excitation_group(p: int, q: int, r: int, s: int, n: int, param_id: int = 0) -> ParameterGroup:
    """Pair excitation ``a_r^dag a_s^dag a_q a_p - h.c.`` from ``(p, q)`` to ``(r, s)``."""
    if n % 2:
        raise ValidationError("number of spin orbitals must be even")
    for k in (p, q, r, s):
        _check_index(k, n)
    if p == q or r == s:
        raise IndexOutOfRange(f"degenerate double excitation ({p},{q})->({r},{s})")
    if p > q or r > s:
        raise IndexOutOfRange(f"double excitation indices must be ordered p<q, r<s")
    if {p, q} & {r, s}:
        raise IndexOutOfRange(f"occupied and virtual orbitals overlap in ({p},{q})->({r},{s})")
    m = n // 2
    if sorted((_block(p, m), _block(q, m))) != sorted((_block(r, m), _block(s, m))):
        raise SpinBlockViolation(f"excitation ({p},{q})->({r},{s}) does not conserve spin")
    return _excitation_group(param_id, n, [r, s], [p, q])


@dataclass(frozen=True)
class ActiveSpace:
    num_spin_orbitals: int
    num_electrons: int

    def __post_init__(self):
        n, eta = self.num_spin_orbitals, self.num_electrons
        if n <= 0 or n % 2:
            raise ValidationError(f"num_spin_orbitals must be a positive even integer, got {n}")
        if eta <= 0 or eta % 2 or eta >= n:
            raise ValidationError(f"num_electrons must be even with 0 < eta < n, got {eta}")

    @property
    def num_spatial(self) -> int:
        return self.num_spin_orbitals // 2

    @property
    def occupied_per_block(self) -> int:
        return self.num_electrons // 2

    def occupied(self) -> list[int]:
        m, o = self.num_spatial, self.occupied_per_block
        return list(range(o)) + list(range(m, m + o))

    def excitations(self):
        """Singles then doubles, each sorted lexicographically."""
        m, o = self.num_spatial, self.occupied_per_block
        alpha_occ, alpha_vir = range(o), range(o, m)
        beta_occ, beta_vir = range(m, m + o), range(m + o, 2 * m)
        singles = [(p, q) for p in alpha_occ for q in alpha_vir]
        singles += [(p, q) for p in beta_occ for q in beta_vir]
        doubles = []
        for occ, vir in ((alpha_occ, alpha_vir), (beta_occ, beta_vir)):
            for p, q in combinations(occ, 2):
                for r, s in combinations(vir, 2):
                    doubles.append((p, q, r, s))
        for p in alpha_occ:
            for q in beta_occ:
                for r in alpha_vir:
                    for s in beta_vir:
                        doubles.append((p, q, r, s))
        return sorted(singles), sorted(doubles)


def hartree_fock_occupations(space: ActiveSpace) -> frozenset[int]:
    return frozenset(space.occupied())


def generate_uccsd(space: ActiveSpace) -> Ansatz:
    n = space.num_spin_orbitals
    singles, doubles = space.excitations()
    groups = []
    for p, q in singles:
        groups.append(single_excitation_group(p, q, n, param_id=len(groups)))
    for p, q, r, s in doubles:
        groups.append(double_excitation_group(p, q, r, s, n, param_id=len(groups)))
    return Ansatz(n, tuple(groups), hartree_fock_occupations(space))


def uccsd_counts(n: int, eta: int) -> tuple[int, int]:
    """Closed-form (parameters, Pauli strings) for a block-spin UCCSD."""
    from math import comb

    o = eta // 2
    v = n // 2 - o
    singles = 2 * o * v
    doubles = 2 * comb(o, 2) * comb(v, 2) + o * o * v * v
    return singles + doubles, 2 * singles + 8 * doubles


def molecular_hamiltonian(one_body, two_body, constant: float = 0.0) -> Hamiltonian:
    """Jordan-Wigner Hamiltonian from spin-orbital integrals.

    ``H = constant + sum h[p,q] a_p^dag a_q + 1/2 sum g[p,q,r,s] a_p^dag a_q^dag a_r a_s``
    with ``g`` in physicists' order. Only used to build small toy inputs.
    """
    import numpy as np

    h1 = np.asarray(one_body, dtype=float)
    g = np.asarray(two_body, dtype=float)
    n = h1.shape[0]
    op = {("I",) * n: complex(constant)}
    for p in range(n):
        for q in range(n):
            if abs(h1[p, q]) > _TOL:
                term = fermion_product(n, [(p, True), (q, False)])
                op = _op_add(op, term, scale=h1[p, q])
    for p, q, r, s in zip(*np.nonzero(np.abs(g) > _TOL)):
        term = fermion_product(n, [(p, True), (q, True), (r, False), (s, False)])
        op = _op_add(op, term, scale=0.5 * g[p, q, r, s])
    terms = []
    for ops, c in sorted(op.items(), key=lambda kv: "".join(reversed(kv[0]))):
        if abs(c.imag) > 1e-10:
            raise ValidationError("integrals do not define a Hermitian operator")
        terms.append(HamiltonianTerm(PauliString(ops), float(c.real)))
    return Hamiltonian(n, tuple(terms))
