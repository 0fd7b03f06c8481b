"""Independent dense-matrix references used across the tests.

Nothing here imports the package's simulator so the checks stay independent.
"""

from functools import reduce

import numpy as np
import scipy.linalg

I2 = np.eye(2, dtype=complex)
PAULI = {
    "I": I2,
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
LOWER = np.array([[0, 1], [0, 0]], dtype=complex)  # |0><1|


def kron_label(label: str) -> np.ndarray:
    # leftmost character is the highest qubit, matching little-endian amplitudes
    return reduce(np.kron, [PAULI[c] for c in label])


def on_qubit(n: int, q: int, op: np.ndarray) -> np.ndarray:
    mats = [I2] * n
    mats[n - 1 - q] = op
    return reduce(np.kron, mats)


def annihilator(n: int, k: int) -> np.ndarray:
    mats = [I2] * n
    for j in range(k):
        mats[n - 1 - j] = PAULI["Z"]
    mats[n - 1 - k] = LOWER
    return reduce(np.kron, mats)


def expm(m: np.ndarray) -> np.ndarray:
    return scipy.linalg.expm(m)


def pauli_exp(label: str, theta: float) -> np.ndarray:
    return expm(-1j * theta * kron_label(label))


def gate(kind, n, qubits, angle=None):
    if kind == "X":
        return on_qubit(n, qubits[0], PAULI["X"])
    if kind == "H":
        return on_qubit(n, qubits[0], (PAULI["X"] + PAULI["Z"]) / np.sqrt(2))
    if kind == "RX":
        return on_qubit(n, qubits[0], expm(-0.5j * angle * PAULI["X"]))
    if kind == "RZ":
        return on_qubit(n, qubits[0], expm(-0.5j * angle * PAULI["Z"]))
    c, t = qubits
    p0 = on_qubit(n, c, np.diag([1, 0]).astype(complex))
    p1 = on_qubit(n, c, np.diag([0, 1]).astype(complex))
    cx = p0 + p1 @ on_qubit(n, t, PAULI["X"])
    if kind == "CNOT":
        return cx
    if kind == "SWAP":
        cx2 = on_qubit(n, t, np.diag([1, 0]).astype(complex)) + on_qubit(n, t, np.diag([0, 1]).astype(complex)) @ on_qubit(n, c, PAULI["X"])
        return cx @ cx2 @ cx
    raise ValueError(kind)


def unitary(circuit) -> np.ndarray:
    u = np.eye(2**circuit.n, dtype=complex)
    for g in circuit.gates:
        u = gate(g.kind, circuit.n, g.qubits, g.angle) @ u
    return u


def same_up_to_phase(u, v, tol=1e-9) -> bool:
    k = np.argmax(np.abs(v))
    flat_u, flat_v = u.reshape(-1), v.reshape(-1)
    if abs(flat_v[k]) < 1e-12:
        return False
    phase = flat_u[k] / flat_v[k]
    return abs(abs(phase) - 1) < tol and np.allclose(u, phase * v, atol=tol)


def hamiltonian_matrix(terms, n):
    m = np.zeros((2**n, 2**n), dtype=complex)
    for label, w in terms:
        m += w * kron_label(label)
    return m
