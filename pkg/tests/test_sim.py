import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import hamiltonian_matrix, kron_label, pauli_exp, unitary
from paulitree import sim
from paulitree.errors import SizeLimitError
from paulitree.pauli import Hamiltonian, parse_pauli
from paulitree.synthesis import Circuit, Gate, synthesize
from paulitree.uccsd import ActiveSpace, generate_uccsd
from paulitree.synthesis import synthesize_ansatz_baseline


def test_little_endian():
    out = sim.apply_circuit(sim.basis_state(2), Circuit(2, (Gate("X", (0,)),)))
    assert np.allclose(out, [0, 1, 0, 0])


def test_rz_is_a_phase():
    out = sim.apply_circuit(sim.basis_state(1), Circuit(1, (Gate("RZ", (0,), angle=0.7),)))
    assert np.allclose(np.abs(out) ** 2, [1, 0])


def test_zz_exponential_on_random_state(rng):
    psi = sim.random_state(2, rng)
    out = sim.apply_circuit(psi, synthesize(parse_pauli("ZZ"), 0.4))
    assert np.allclose(out, pauli_exp("ZZ", 0.4) @ psi, atol=1e-10)


def test_expectations(rng):
    assert sim.expectation(sim.basis_state(1), parse_pauli("Z")) == 1.0
    plus = np.array([1, 1]) / np.sqrt(2)
    assert abs(sim.expectation(plus, parse_pauli("Z"))) < 1e-15
    psi = sim.random_state(4, rng)
    ref = np.real(np.vdot(psi, kron_label("XZIY") @ psi))
    assert sim.expectation(psi, parse_pauli("XZIY")) == pytest.approx(ref, abs=1e-12)


def test_energy(rng):
    assert sim.energy(sim.basis_state(1), Hamiltonian.from_labels([("Z", 1.0)])) == 1.0
    assert sim.energy(sim.random_state(2, rng), Hamiltonian.from_labels([("II", -0.7)])) == pytest.approx(-0.7)
    terms = [("XYZ", 0.3), ("ZZI", -1.2), ("IIX", 0.5), ("YIY", 0.1)]
    h = Hamiltonian.from_labels(terms)
    psi = sim.random_state(3, rng)
    ref = np.real(np.vdot(psi, hamiltonian_matrix(terms, 3) @ psi))
    assert sim.energy(psi, h) == pytest.approx(ref, abs=1e-12)
    assert sim.energy(psi, h.scaled(2.5)) == pytest.approx(2.5 * ref, abs=1e-12)


def test_phase_equivalence():
    u = unitary(synthesize(parse_pauli("XY"), 0.3))
    assert sim.equivalent_up_to_phase(u, np.exp(1j * math.pi / 7) * u)
    a = unitary(Circuit(1, (Gate("RZ", (0,), angle=0.3),)))
    b = unitary(Circuit(1, (Gate("RZ", (0,), angle=0.4),)))
    assert not sim.equivalent_up_to_phase(a, b, 1e-9)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.sampled_from(["H", "X", "RX", "RZ", "CNOT", "SWAP"]), st.integers(0, 2), st.integers(0, 2), st.floats(-3, 3)), max_size=12))
def test_unitary_against_oracle(spec):
    gates = []
    for kind, a, b, angle in spec:
        if kind in ("CNOT", "SWAP"):
            if a == b:
                continue
            gates.append(Gate(kind, (a, b)))
        else:
            gates.append(Gate(kind, (a,), angle=angle if kind in ("RX", "RZ") else None))
    c = Circuit(3, tuple(gates))
    u = sim.circuit_unitary(c)
    assert np.allclose(u, unitary(c), atol=1e-10)
    assert np.allclose(u.conj().T @ u, np.eye(8), atol=1e-9)


def test_exact_ground_energy():
    assert sim.exact_ground_energy(Hamiltonian.from_labels([("Z", 1.0)])) == pytest.approx(-1)
    assert sim.exact_ground_energy(Hamiltonian.from_labels([("X", 1.0)])) == pytest.approx(-1)
    m = 0.5 * np.kron(np.diag([1, -1]), np.diag([1, -1])) + 0.3 * np.kron(np.array([[0, 1], [1, 0]]), np.eye(2))
    want = min(np.linalg.eigvals(m).real)
    h = Hamiltonian.from_labels([("ZZ", 0.5), ("XI", 0.3)])
    assert sim.exact_ground_energy(h) == pytest.approx(want, abs=1e-12)


def test_variational_principle_spot_check(rng):
    h = Hamiltonian.from_labels([("XYZ", 0.3), ("ZZI", -1.2), ("IIX", 0.5)])
    e0 = sim.exact_ground_energy(h)
    for _ in range(50):
        assert sim.energy(sim.random_state(3, rng), h) >= e0 - 1e-12


def test_pauli_rotation_and_dense_exponential(rng):
    psi = sim.random_state(3, rng)
    p = parse_pauli("YXZ")
    assert np.allclose(sim.apply_pauli_rotation(psi, p, 0.8), pauli_exp("YXZ", 0.8) @ psi)
    assert np.allclose(sim.pauli_exponential(p, 0.8), pauli_exp("YXZ", 0.8))


def test_norm_preserved_through_ansatz(rng):
    a = generate_uccsd(ActiveSpace(6, 2))
    out = sim.apply_circuit(sim.basis_state(6), synthesize_ansatz_baseline(a, rng.normal(size=8)))
    assert np.linalg.norm(out) == pytest.approx(1.0, abs=1e-12)


def test_permute_and_extract_are_inverse(rng):
    psi = sim.random_state(3, rng)
    mapping = [4, 0, 2]
    big = sim.permute_qubits(psi, 3, mapping, 5)
    assert np.allclose(sim.extract_qubits(big, 5, mapping, 3), psi)
    # logical qubit 0 flipped should flip register qubit 4
    flipped = sim.apply_circuit(big, Circuit(5, (Gate("X", (4,)),)))
    x0 = sim.apply_circuit(psi, Circuit(3, (Gate("X", (0,)),)))
    assert np.allclose(sim.extract_qubits(flipped, 5, mapping, 3), x0)


def test_size_limits():
    with pytest.raises(SizeLimitError):
        sim.circuit_unitary(Circuit(11, ()))
    with pytest.raises(SizeLimitError):
        sim.exact_ground_energy(Hamiltonian.from_labels([("Z" * 13, 1.0)]))
