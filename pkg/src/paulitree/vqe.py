"""VQE outer loop on exact statevectors."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.optimize
import scipy.sparse

from . import sim
from .compress import compress_ansatz
from .errors import ArityMismatch, NonFiniteEnergy, SizeLimitError, ValidationError
from .pauli import Ansatz, Hamiltonian
from .synthesis import Circuit, synthesize_ansatz_baseline

MAX_VQE_QUBITS = 16
SHIFT = math.pi / 4


@dataclass(frozen=True)
class VqeConfig:
    optimizer: str = "bfgs"  # "bfgs" (parameter-shift gradients) or "nelder-mead"
    energy_tol: float = 1e-6
    max_iters: int = 500
    initial_params: str = "zeros"  # or "random"
    seed: int = 0

    def __post_init__(self):
        if self.optimizer not in ("bfgs", "nelder-mead"):
            raise ValidationError(f"unknown optimizer {self.optimizer!r}")
        if not self.energy_tol > 0:
            raise ValidationError("energy_tol must be positive")
        if self.max_iters < 1:
            raise ValidationError("max_iters must be at least 1")
        if self.initial_params not in ("zeros", "random"):
            raise ValidationError(f"unknown initial_params {self.initial_params!r}")


@dataclass
class VqeResult:
    final_energy: float
    params: np.ndarray
    iterations: int
    trace: list[float]
    grad_norms: list[float] = field(default_factory=list)
    evaluations: int = 0

    def trace_csv(self) -> str:
        lines = ["iter,energy,grad_norm"]
        for i, (e, g) in enumerate(zip(self.trace, self.grad_norms)):
            lines.append(f"{i},{e!r},{g!r}")
        return "\n".join(lines) + "\n"


def bind_parameters(a: Ansatz, values: Sequence[float], method: str = "chain", arch=None, layout=None) -> Circuit:
    """Concrete circuit for ``a`` at ``values``.

    ``method="chain"`` gives the logical chain-synthesised circuit;
    ``method="mtr"`` compiles with Merge-to-Root onto ``arch`` from ``layout``.
    """
    values = list(values)
    if len(values) != a.num_parameters:
        raise ArityMismatch(f"ansatz has {a.num_parameters} parameters, got {len(values)} values")
    if method == "chain":
        return synthesize_ansatz_baseline(a, values)
    if method == "mtr":
        from .routing import hierarchical_layout, merge_to_root

        if arch is None:
            raise ValidationError("method='mtr' needs an architecture")
        if layout is None:
            layout = hierarchical_layout(a.strings(), arch, a.n)
        return merge_to_root(a, arch, layout, values)[0]
    raise ValidationError(f"unknown synthesis method {method!r}")


def hamiltonian_operator(h: Hamiltonian) -> scipy.sparse.csr_matrix:
    """Sparse matrix of ``h``; each Pauli string is a signed permutation."""
    dim = 2**h.n
    rows, cols, vals = [], [], []
    idx = np.arange(dim)
    for t in h.terms:
        perm, phase = sim._pauli_action(t.pauli)
        rows.append(perm)
        cols.append(idx)
        vals.append(t.weight * phase)
    if not rows:
        return scipy.sparse.csr_matrix((dim, dim), dtype=complex)
    m = scipy.sparse.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(dim, dim)
    )
    return m.tocsr()


class AnsatzEnergy:
    """Energy and parameter-shift gradient of ``<HF| U(theta)^dag H U(theta) |HF>``."""

    def __init__(self, h: Hamiltonian, a: Ansatz):
        if h.n != a.n:
            raise ValidationError(f"Hamiltonian acts on {h.n} qubits, ansatz on {a.n}")
        if a.n > MAX_VQE_QUBITS:
            raise SizeLimitError(f"VQE limited to {MAX_VQE_QUBITS} qubits")
        self.h = h
        self.a = a
        self.op = hamiltonian_operator(h)
        self.hf = sim.basis_state(a.n, a.initial_occupations)
        self.terms = [
            (g_idx, coeff, sim._pauli_action(p))
            for g_idx, group in enumerate(a.groups)
            for p, coeff in group.terms
            if not p.is_identity
        ]
        self.evaluations = 0

    def _rotate(self, psi, action, angle):
        perm, phase = action
        p_psi = np.empty_like(psi)
        p_psi[perm] = phase * psi
        return math.cos(angle) * psi - 1j * math.sin(angle) * p_psi

    def _angles(self, theta):
        return [theta[g] * c for g, c, _ in self.terms]

    def _finish(self, psi, start, angles):
        for k in range(start, len(self.terms)):
            psi = self._rotate(psi, self.terms[k][2], angles[k])
        return psi

    def _value(self, psi) -> float:
        self.evaluations += 1
        e = float(np.real(np.vdot(psi, self.op @ psi)))
        if not math.isfinite(e):
            raise NonFiniteEnergy("energy evaluation produced a non-finite value")
        return e

    def state(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        if theta.shape != (self.a.num_parameters,):
            raise ArityMismatch(f"expected {self.a.num_parameters} parameters, got {theta.shape}")
        return self._finish(self.hf.copy(), 0, self._angles(theta))

    def energy(self, theta) -> float:
        return self._value(self.state(theta))

    def gradient(self, theta) -> np.ndarray:
        """Exact gradient via the two-term shift rule on every string."""
        theta = np.asarray(theta, dtype=float)
        angles = self._angles(theta)
        grad = np.zeros(self.a.num_parameters)
        psi = self.hf.copy()
        for k, (g, coeff, action) in enumerate(self.terms):
            diff = 0.0
            for sign in (1.0, -1.0):
                shifted = self._rotate(psi, action, angles[k] + sign * SHIFT)
                diff += sign * self._value(self._finish(shifted, k + 1, angles))
            grad[g] += coeff * diff
            psi = self._rotate(psi, action, angles[k])
        return grad


def run_vqe(h: Hamiltonian, a: Ansatz, cfg: VqeConfig = VqeConfig()) -> VqeResult:
    """Minimise the ansatz energy.

    ``trace`` holds the energy at the starting point followed by the energy
    after every accepted optimizer step; ``iterations == len(trace)``.
    Stops once two consecutive trace entries differ by less than
    ``cfg.energy_tol`` or after ``cfg.max_iters`` entries.
    """
    obj = AnsatzEnergy(h, a)
    k = a.num_parameters
    if cfg.initial_params == "random":
        x0 = np.random.default_rng(cfg.seed).normal(scale=0.1, size=k)
    else:
        x0 = np.zeros(k)

    e0 = obj.energy(x0)
    trace = [e0]
    grad_norms = [float(np.linalg.norm(obj.gradient(x0))) if k else 0.0]
    best = {"x": x0.copy()}
    last_grad = {}

    def gradient(x):
        g = obj.gradient(x)
        last_grad["x"], last_grad["g"] = np.array(x, dtype=float), g
        return g

    def grad_norm_at(x):
        if "x" in last_grad and np.array_equal(last_grad["x"], x):
            return float(np.linalg.norm(last_grad["g"]))
        return float("nan")

    if k == 0:
        return VqeResult(e0, x0, 1, trace, grad_norms, obj.evaluations)

    def on_step(intermediate_result):
        x = np.array(intermediate_result.x, dtype=float)
        e = float(intermediate_result.fun)
        if not math.isfinite(e):
            raise NonFiniteEnergy("optimizer reported a non-finite energy")
        if cfg.optimizer == "nelder-mead" and e >= trace[-1]:
            # simplex reshaping without a new best vertex is not a step
            return
        trace.append(e)
        grad_norms.append(grad_norm_at(x))
        best["x"] = x
        if abs(trace[-1] - trace[-2]) < cfg.energy_tol or len(trace) >= cfg.max_iters:
            raise StopIteration

    if cfg.optimizer == "bfgs":
        res = scipy.optimize.minimize(
            obj.energy,
            x0,
            jac=gradient,
            method="BFGS",
            callback=on_step,
            options={"maxiter": cfg.max_iters, "gtol": 1e-9},
        )
    else:
        res = scipy.optimize.minimize(
            obj.energy,
            x0,
            method="Nelder-Mead",
            callback=on_step,
            options={"maxiter": cfg.max_iters, "xatol": 1e-9, "fatol": cfg.energy_tol / 10},
        )
    x = best["x"]
    if len(trace) == 1 and res.fun < trace[0]:
        # optimizer finished inside its first line search without a callback
        x = np.array(res.x, dtype=float)
        trace.append(float(res.fun))
        grad_norms.append(float("nan"))
    # keep the invariant final_energy == trace[-1] with the returned parameters
    final = trace[-1]
    return VqeResult(final, x, len(trace), trace, grad_norms, obj.evaluations)


@dataclass(frozen=True)
class ConvergenceRow:
    ratio: float
    num_parameters: int
    iterations: int
    evaluations: int
    final_energy: float
    energy_error: float


def convergence_compare(h: Hamiltonian, ansatz_full: Ansatz, ratios: Sequence[float], cfg: VqeConfig = VqeConfig()):
    exact = sim.exact_ground_energy(h)
    rows = []
    for ratio in ratios:
        compressed = compress_ansatz(ansatz_full, h, ratio)
        res = run_vqe(h, compressed, cfg)
        rows.append(
            ConvergenceRow(ratio, compressed.num_parameters, res.iterations, res.evaluations, res.final_energy, res.final_energy - exact)
        )
    return rows
