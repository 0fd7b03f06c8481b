"""Dense statevector simulation and matrix oracles.

Basis index ``b`` has qubit ``i`` as bit ``i`` (little-endian), consistent with
the Pauli-string convention where the rightmost character is qubit 0.
"""

from __future__ import annotations

from functools import reduce

import numpy as np
import scipy.linalg

from .errors import LengthMismatch, SizeLimitError, ValidationError
from .pauli import Hamiltonian, PauliString

MAX_STATE_QUBITS = 24
MAX_UNITARY_QUBITS = 10
MAX_DENSE_QUBITS = 12

_PAULI_MATS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def rx(angle: float) -> np.ndarray:
    c, s = np.cos(angle / 2), np.sin(angle / 2)
    return np.array([[c, -1j * s], [-1j * s, c]])


def rz(angle: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * angle), np.exp(0.5j * angle)])


def gate_matrix(kind: str, angle: float | None = None) -> np.ndarray:
    if kind == "X":
        return _PAULI_MATS["X"]
    if kind == "H":
        return _H
    if kind == "RX":
        return rx(angle)
    if kind == "RZ":
        return rz(angle)
    raise ValidationError(f"no single-qubit matrix for gate {kind}")


def basis_state(n: int, occupied=()) -> np.ndarray:
    if n > MAX_STATE_QUBITS:
        raise SizeLimitError(f"{n} qubits exceeds the statevector limit of {MAX_STATE_QUBITS}")
    psi = np.zeros(2**n, dtype=complex)
    psi[sum(1 << q for q in occupied)] = 1.0
    return psi


def random_state(n: int, rng: np.random.Generator) -> np.ndarray:
    psi = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return psi / np.linalg.norm(psi)


# Gate application works on arrays of shape (2**n, ...) so the same code
# evolves a single state or every column of a unitary.


def _axis(n: int, q: int) -> int:
    return n - 1 - q


def _as_tensor(state: np.ndarray, n: int) -> np.ndarray:
    return state.reshape((2,) * n + state.shape[1:])


def apply_1q(state: np.ndarray, n: int, q: int, mat: np.ndarray) -> np.ndarray:
    t = _as_tensor(state, n)
    t = np.moveaxis(np.tensordot(mat, t, axes=([1], [_axis(n, q)])), 0, _axis(n, q))
    return t.reshape(state.shape)


def apply_cnot(state: np.ndarray, n: int, control: int, target: int) -> np.ndarray:
    t = _as_tensor(state, n).copy()
    idx = [slice(None)] * t.ndim
    idx[_axis(n, control)] = 1
    sub = t[tuple(idx)]
    tax = _axis(n, target) - (1 if _axis(n, target) > _axis(n, control) else 0)
    t[tuple(idx)] = np.flip(sub, axis=tax)
    return t.reshape(state.shape)


def apply_swap(state: np.ndarray, n: int, a: int, b: int) -> np.ndarray:
    t = _as_tensor(state, n)
    return np.swapaxes(t, _axis(n, a), _axis(n, b)).reshape(state.shape)


def apply_gate(state: np.ndarray, n: int, gate) -> np.ndarray:
    kind = gate.kind
    if kind == "CNOT":
        return apply_cnot(state, n, *gate.qubits)
    if kind == "SWAP":
        return apply_swap(state, n, *gate.qubits)
    return apply_1q(state, n, gate.qubits[0], gate_matrix(kind, gate.angle))


def apply_circuit(state: np.ndarray, circuit) -> np.ndarray:
    n = circuit.n
    if n > MAX_STATE_QUBITS:
        raise SizeLimitError(f"{n} qubits exceeds the statevector limit of {MAX_STATE_QUBITS}")
    if state.shape[0] != 2**n:
        raise LengthMismatch(f"state has {state.shape[0]} amplitudes, circuit acts on {n} qubits")
    out = np.array(state, dtype=complex)
    for g in circuit.gates:
        out = apply_gate(out, n, g)
    return out


def circuit_unitary(circuit) -> np.ndarray:
    if circuit.n > MAX_UNITARY_QUBITS:
        raise SizeLimitError(f"unitary extraction limited to {MAX_UNITARY_QUBITS} qubits")
    return apply_circuit(np.eye(2**circuit.n, dtype=complex), circuit)


def equivalent_up_to_phase(u: np.ndarray, v: np.ndarray, tol: float = 1e-9) -> bool:
    """True iff ``max |u - e^{i phi} v| <= tol`` with ``phi`` fixed by the
    largest-magnitude entry of ``v``."""
    u = np.asarray(u)
    v = np.asarray(v)
    if u.shape != v.shape:
        return False
    k = np.unravel_index(np.argmax(np.abs(v)), v.shape)
    if abs(v[k]) < 1e-15:
        return bool(np.max(np.abs(u)) <= tol)
    phase = u[k] / v[k]
    if abs(phase) < 1e-15:
        return False
    phase /= abs(phase)
    return bool(np.max(np.abs(u - phase * v)) <= tol)


# Pauli operators on states ----------------------------------------------------


def _pauli_action(p: PauliString):
    """Index map and phases with ``(P psi)[perm] = phase * psi``."""
    idx = np.arange(2**p.n)
    n_y = sum(op == "Y" for op in p.ops)
    zbits = np.bitwise_and(idx, p.z_mask)
    parity = np.zeros_like(idx)
    for q in p.support:
        if p.ops[q] in "ZY":
            parity ^= (zbits >> q) & 1
    phase = (1j**n_y) * (1 - 2 * parity)
    return idx ^ p.x_mask, phase


def apply_pauli(state: np.ndarray, p: PauliString) -> np.ndarray:
    perm, phase = _pauli_action(p)
    out = np.empty_like(state, dtype=complex)
    out[perm] = phase * state
    return out


def apply_pauli_rotation(state: np.ndarray, p: PauliString, angle: float) -> np.ndarray:
    """``exp(-i * angle * P) |state>``."""
    return np.cos(angle) * state - 1j * np.sin(angle) * apply_pauli(state, p)


def expectation(state: np.ndarray, p: PauliString) -> float:
    if state.shape[0] != 2**p.n:
        raise LengthMismatch(f"state size {state.shape[0]} does not match {p.n}-qubit string")
    return float(np.real(np.vdot(state, apply_pauli(state, p))))


def energy(state: np.ndarray, h: Hamiltonian) -> float:
    if state.shape[0] != 2**h.n:
        raise LengthMismatch(f"state size {state.shape[0]} does not match {h.n}-qubit Hamiltonian")
    total = 0.0
    for t in h.terms:
        total += t.weight * (1.0 if t.pauli.is_identity else expectation(state, t.pauli))
    return total


# Dense matrices -------------------------------------------------------------------


def pauli_matrix(p: PauliString) -> np.ndarray:
    if p.n > MAX_DENSE_QUBITS:
        raise SizeLimitError(f"dense matrices limited to {MAX_DENSE_QUBITS} qubits")
    return reduce(np.kron, [_PAULI_MATS[c] for c in p.label])


def hamiltonian_matrix(h: Hamiltonian) -> np.ndarray:
    if h.n > MAX_DENSE_QUBITS:
        raise SizeLimitError(f"dense matrices limited to {MAX_DENSE_QUBITS} qubits")
    m = np.zeros((2**h.n, 2**h.n), dtype=complex)
    for t in h.terms:
        m += t.weight * pauli_matrix(t.pauli)
    return m


def expm_hermitian(generator: np.ndarray, theta: float) -> np.ndarray:
    """``exp(-i theta G)`` for Hermitian ``G`` via eigendecomposition."""
    vals, vecs = np.linalg.eigh(generator)
    return (vecs * np.exp(-1j * theta * vals)) @ vecs.conj().T


def pauli_exponential(p: PauliString, theta: float) -> np.ndarray:
    return expm_hermitian(pauli_matrix(p), theta)


def exact_ground_energy(h: Hamiltonian) -> float:
    if h.n > MAX_DENSE_QUBITS:
        raise SizeLimitError(f"exact diagonalisation limited to {MAX_DENSE_QUBITS} qubits")
    return float(scipy.linalg.eigvalsh(hamiltonian_matrix(h), subset_by_index=[0, 0])[0])


def permute_qubits(state: np.ndarray, n_from: int, mapping, n_to: int) -> np.ndarray:
    """Embed a state so that qubit ``i`` lands on qubit ``mapping[i]`` of an
    ``n_to``-qubit register; unmapped qubits start in ``|0>``."""
    mapping = list(mapping)
    if len(mapping) != n_from or len(set(mapping)) != n_from:
        raise ValidationError("mapping must be injective over the source qubits")
    t = state.reshape((2,) * n_from)
    rest = [q for q in range(n_to) if q not in mapping]
    # build the target tensor with source axes first, then idle axes at |0>
    src = np.zeros((2,) * n_from + (2,) * len(rest), dtype=complex)
    src[(Ellipsis,) + (0,) * len(rest)] = t
    order = [_axis(n_to, mapping[i]) for i in reversed(range(n_from))]
    order += [_axis(n_to, q) for q in rest]
    full = np.moveaxis(src, list(range(n_to)), order)
    return full.reshape(2**n_to)


def extract_qubits(state: np.ndarray, n_from: int, mapping, n_to: int) -> np.ndarray:
    """Inverse of :func:`permute_qubits`: read logical qubit ``i`` from register
    qubit ``mapping[i]``; projects idle qubits onto ``|0>``."""
    mapping = list(mapping)
    t = state.reshape((2,) * n_from)
    rest = [q for q in range(n_from) if q not in mapping]
    order = [_axis(n_from, mapping[i]) for i in reversed(range(n_to))]
    order += [_axis(n_from, q) for q in rest]
    t = np.moveaxis(t, order, list(range(n_from)))
    return t[(Ellipsis,) + (0,) * len(rest)].reshape(2**n_to)
