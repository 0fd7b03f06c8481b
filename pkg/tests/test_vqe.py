import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import same_up_to_phase, unitary
from paulitree import sim
from paulitree.architecture import xtree
from paulitree.errors import ArityMismatch, SizeLimitError, ValidationError
from paulitree.hamiltonians import build_h2, h2_sto3g, planted_hamiltonian, toy_set
from paulitree.pauli import Ansatz, Hamiltonian, ParameterGroup, parse_pauli
from paulitree.synthesis import synthesize_ansatz_baseline
from paulitree.uccsd import ActiveSpace, generate_uccsd
from paulitree.vqe import AnsatzEnergy, VqeConfig, bind_parameters, convergence_compare, run_vqe


def one_qubit_problem():
    h = Hamiltonian.from_labels([("X", 1.0)])
    a = Ansatz(1, (ParameterGroup(0, ((parse_pauli("Y"), 1.0),)),))
    return h, a


def random_hamiltonian(n, rng, k=10):
    labels = ["".join(rng.choice(list("IXYZ"), n)) for _ in range(k)]
    return Hamiltonian.from_labels(zip(labels, rng.normal(size=k)))


def test_closed_form_landscape():
    h, a = one_qubit_problem()
    obj = AnsatzEnergy(h, a)
    for t in np.linspace(-2, 2, 9):
        assert obj.energy([t]) == pytest.approx(np.sin(2 * t), abs=1e-12)
    res = run_vqe(h, a)
    assert res.final_energy == pytest.approx(-1.0, abs=1e-6)


def test_empty_ansatz_is_one_iteration():
    h = h2_sto3g()
    a = Ansatz(4, (), frozenset({0, 2}))
    res = run_vqe(h, a)
    assert res.iterations == 1 and res.trace == [res.final_energy]
    assert res.final_energy == pytest.approx(sim.energy(sim.basis_state(4, [0, 2]), h))


def test_h2_reaches_ground_state():
    res = run_vqe(h2_sto3g(), generate_uccsd(ActiveSpace(4, 2)))
    assert res.final_energy == pytest.approx(sim.exact_ground_energy(h2_sto3g()), abs=1e-6)
    assert res.final_energy == pytest.approx(-1.137, abs=1e-3)


def test_bundled_h2_matches_builder():
    assert h2_sto3g() == build_h2()


def test_toy_random_four_qubit():
    a = generate_uccsd(ActiveSpace(4, 2))
    h, _, e0 = planted_hamiltonian(a, seed=11)
    assert sim.exact_ground_energy(h) == pytest.approx(e0, abs=1e-9)
    res = run_vqe(h, a)
    assert abs(res.final_energy - e0) < 1e-3


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_parameter_shift_matches_finite_differences(seed):
    rng = np.random.default_rng(seed)
    n = 4 if seed % 2 else 6
    a = generate_uccsd(ActiveSpace(n, 2))
    obj = AnsatzEnergy(random_hamiltonian(n, rng), a)
    x = rng.normal(size=a.num_parameters)
    step = 1e-5
    fd = [(obj.energy(x + step * e) - obj.energy(x - step * e)) / (2 * step) for e in np.eye(len(x))]
    assert np.allclose(obj.gradient(x), fd, atol=1e-6)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10_000))
def test_energies_respect_variational_bound(seed):
    rng = np.random.default_rng(seed)
    a = generate_uccsd(ActiveSpace(4, 2))
    h = random_hamiltonian(4, rng)
    e0 = sim.exact_ground_energy(h)
    res = run_vqe(h, a, VqeConfig(initial_params="random", seed=seed))
    assert min(res.trace) >= e0 - 1e-9
    assert res.iterations == len(res.trace) and res.final_energy == res.trace[-1]


def test_state_matches_circuit(rng):
    a = generate_uccsd(ActiveSpace(6, 2))
    x = rng.normal(size=a.num_parameters)
    psi = AnsatzEnergy(Hamiltonian(6, ()), a).state(x)
    ref = sim.apply_circuit(sim.basis_state(6), synthesize_ansatz_baseline(a, x))
    assert abs(abs(np.vdot(psi, ref)) - 1) < 1e-10


def test_bind_parameters():
    a = generate_uccsd(ActiveSpace(4, 2))
    zero = bind_parameters(a, [0.0] * 3)
    hf = synthesize_ansatz_baseline(Ansatz(4, (), a.initial_occupations))
    assert same_up_to_phase(unitary(zero), unitary(hf))
    with pytest.raises(ArityMismatch):
        bind_parameters(a, [0.1])


def test_bind_single_group_is_product_of_exponentials():
    a = generate_uccsd(ActiveSpace(4, 2))
    one = a.with_groups([a.groups[2]])
    c = bind_parameters(one, [0.7])
    ref = unitary(synthesize_ansatz_baseline(Ansatz(4, (), a.initial_occupations)))
    for p, coeff in one.groups[0].terms:
        ref = sim.pauli_exponential(p, 0.7 * coeff) @ ref
    assert same_up_to_phase(unitary(c), ref)
    for g in c.gates:
        if g.kind == "RZ":
            assert abs(g.angle) == pytest.approx(2 * 0.7 * 0.125)


def test_bind_mtr_template():
    a = generate_uccsd(ActiveSpace(4, 2))
    c = bind_parameters(a, [0.1, 0.2, 0.3], method="mtr", arch=xtree("XTree5Q"))
    assert c.n == 5
    with pytest.raises(ValidationError):
        bind_parameters(a, [0.1, 0.2, 0.3], method="mtr")


def test_convergence_table():
    h = h2_sto3g()
    a = generate_uccsd(ActiveSpace(4, 2))
    rows = convergence_compare(h, a, [0.1, 0.5, 1.0])
    full = run_vqe(h, a)
    assert rows[-1].iterations == full.iterations and rows[-1].final_energy == full.final_energy
    assert rows[1].energy_error >= rows[2].energy_error - 1e-6


def test_compressed_converges_no_slower_on_toy_set():
    for name, h, a in toy_set():
        rows = convergence_compare(h, a, [0.1, 1.0])
        assert rows[0].iterations <= rows[1].iterations, name


def test_subspace_monotonicity():
    name, h, a = toy_set()[2]
    from paulitree.compress import compress_ansatz

    small = compress_ansatz(a, h, 0.3)
    big = compress_ansatz(a, h, 0.7)
    res_small = run_vqe(h, small)
    # seed the larger run at the smaller optimum padded with zeros
    x0 = np.zeros(big.num_parameters)
    pos = {pid: i for i, pid in enumerate(big.param_ids)}
    for pid, v in zip(small.param_ids, res_small.params):
        x0[pos[pid]] = v
    obj = AnsatzEnergy(h, big)
    assert obj.energy(x0) == pytest.approx(res_small.final_energy, abs=1e-12)
    from scipy.optimize import minimize

    best = minimize(obj.energy, x0, jac=obj.gradient, method="BFGS").fun
    assert best <= res_small.final_energy + 1e-12


def test_nelder_mead_path():
    h, a = one_qubit_problem()
    res = run_vqe(h, a, VqeConfig(optimizer="nelder-mead", energy_tol=1e-9))
    assert res.final_energy == pytest.approx(-1.0, abs=1e-5)


def test_determinism():
    h = h2_sto3g()
    a = generate_uccsd(ActiveSpace(4, 2))
    cfg = VqeConfig(initial_params="random", seed=5)
    assert run_vqe(h, a, cfg).trace == run_vqe(h, a, cfg).trace


def test_config_validation():
    for kwargs in ({"energy_tol": 0}, {"max_iters": 0}, {"optimizer": "adam"}, {"initial_params": "ones"}):
        with pytest.raises(ValidationError):
            VqeConfig(**kwargs)


def test_size_limit():
    a = Ansatz(17, (ParameterGroup(0, ((parse_pauli("Z" * 17), 1.0),)),))
    with pytest.raises(SizeLimitError):
        run_vqe(Hamiltonian(17, ()), a)
