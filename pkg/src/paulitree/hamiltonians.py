"""Small Hamiltonians for experiments: H2, planted-ground-state and synthetic."""

from __future__ import annotations

from importlib import resources

import numpy as np

from .errors import SizeLimitError
from .pauli import Ansatz, Hamiltonian, HamiltonianTerm, PauliString, hamiltonian_from_dict
from .uccsd import ActiveSpace, generate_uccsd, molecular_hamiltonian

# spatial-orbital integrals for H2 / STO-3G near 0.7414 Angstrom (chemists' notation)
H2_ONE_BODY = np.array([[-1.252477, 0.0], [0.0, -0.475934]])
H2_COULOMB = {(0, 0, 0, 0): 0.674493, (1, 1, 1, 1): 0.697397, (0, 0, 1, 1): 0.663472}
H2_EXCHANGE = 0.181287  # (01|10)
H2_NUCLEAR = 0.713754

MAX_PLANTED_QUBITS = 8


def _chem_integrals(m: int):
    eri = np.zeros((m, m, m, m))
    for (p, q, r, s), v in H2_COULOMB.items():
        for a, b, c, d in {(p, q, r, s), (r, s, p, q)}:
            eri[a, b, c, d] = v
    for a, b, c, d in [(0, 1, 1, 0), (1, 0, 0, 1), (0, 1, 0, 1), (1, 0, 1, 0)]:
        eri[a, b, c, d] = H2_EXCHANGE
    return eri


def spin_orbital_integrals(one_body, eri):
    """Block-spin (alpha first) integrals; two-body in the physicists' order
    used by :func:`molecular_hamiltonian`."""
    m = one_body.shape[0]
    n = 2 * m
    h1 = np.zeros((n, n))
    g = np.zeros((n, n, n, n))
    spin = [i // m for i in range(n)]
    orb = [i % m for i in range(n)]
    for p in range(n):
        for q in range(n):
            if spin[p] == spin[q]:
                h1[p, q] = one_body[orb[p], orb[q]]
    for p in range(n):
        for q in range(n):
            for r in range(n):
                for s in range(n):
                    # a+_p a+_q a_r a_s carries (ps|qr)
                    if spin[p] == spin[s] and spin[q] == spin[r]:
                        g[p, q, r, s] = eri[orb[p], orb[s], orb[q], orb[r]]
    return h1, g


def build_h2() -> Hamiltonian:
    h1, g = spin_orbital_integrals(H2_ONE_BODY, _chem_integrals(2))
    return molecular_hamiltonian(h1, g, H2_NUCLEAR)


def h2_sto3g() -> Hamiltonian:
    """Bundled 4-qubit H2 Hamiltonian (same as :func:`build_h2`)."""
    import json

    text = resources.files("paulitree.data").joinpath("h2_sto3g.json").read_text()
    return hamiltonian_from_dict(json.loads(text))


def _pauli_decompose(mat: np.ndarray, n: int, cutoff: float) -> Hamiltonian:
    # Walsh-style decomposition: w_P = Tr(P M) / 2^n, computed per x-mask
    dim = 2**n
    idx = np.arange(dim)
    parity = np.array([1 - 2 * (bin(i).count("1") & 1) for i in range(dim)])
    terms = []
    for xm in range(dim):
        diag = mat[idx ^ xm, idx]  # <i^x| M |i>
        for zm in range(dim):
            # P = i^{#Y} X^x Z^z; <i^x|P|i> = i^{#Y} (-1)^{popcount(i & z)}
            signs = parity[idx & zm]
            ny = bin(xm & zm).count("1")
            w = (1j**ny) * np.dot(signs, diag) / dim
            if abs(w) > cutoff:
                ops = []
                for q in range(n):
                    x, z = (xm >> q) & 1, (zm >> q) & 1
                    ops.append("IXZY"[x + 2 * z])
                terms.append(HamiltonianTerm(PauliString(tuple(ops)), float(np.real(w))))
    terms.sort(key=lambda t: t.pauli.label)
    return Hamiltonian(n, tuple(terms))


def planted_hamiltonian(a: Ansatz, seed: int, active: int | None = None, gap: float = 0.5, cutoff: float = 1e-10):
    """Real symmetric Hamiltonian whose unique ground state is ``U(theta*)|HF>``.

    ``theta*`` is nonzero on ``active`` randomly chosen groups (all when
    ``None``). Returns ``(hamiltonian, theta_star, ground_energy)``.
    """
    from .vqe import AnsatzEnergy

    if a.n > MAX_PLANTED_QUBITS:
        raise SizeLimitError(f"planted Hamiltonians limited to {MAX_PLANTED_QUBITS} qubits")
    rng = np.random.default_rng(seed)
    k = a.num_parameters
    theta = np.zeros(k)
    chosen = np.arange(k) if active is None else rng.choice(k, size=min(active, k), replace=False)
    theta[chosen] = rng.uniform(-0.4, 0.4, size=len(chosen))
    psi = AnsatzEnergy(Hamiltonian(a.n, ()), a).state(theta).real
    dim = psi.size
    basis = rng.normal(size=(dim, dim))
    basis[:, 0] = psi
    q, _ = np.linalg.qr(basis)
    q[:, 0] *= np.sign(q[:, 0] @ psi)
    spectrum = np.concatenate([[-1.0], -1.0 + gap + rng.uniform(0.0, 1.0, dim - 1)])
    mat = (q * spectrum) @ q.T
    return _pauli_decompose(mat, a.n, cutoff), theta, -1.0


def synthetic_hamiltonian(a: Ansatz, seed: int) -> Hamiltonian:
    """Random weights on the ansatz strings plus single-qubit Z terms.

    Only drives the importance ranking when no molecular input is available.
    """
    rng = np.random.default_rng(seed)
    labels = sorted({p.label for p in a.strings()} | {PauliString.from_ops(a.n, {q: "Z"}).label for q in range(a.n)})
    return Hamiltonian(a.n, tuple(HamiltonianTerm(PauliString.from_label(s), float(rng.normal())) for s in labels))


def toy_set(seed: int = 7):
    """(name, hamiltonian, full ansatz) triples used for convergence studies."""
    out = [("H2", h2_sto3g(), generate_uccsd(ActiveSpace(4, 2)))]
    for n, eta in [(4, 2), (6, 2)]:
        a = generate_uccsd(ActiveSpace(n, eta))
        h, _, _ = planted_hamiltonian(a, seed + n, active=max(1, a.num_parameters // 3))
        out.append((f"planted-{n}q", h, a))
    return out
