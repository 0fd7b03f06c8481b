"""Command-line entry point (``paulitree`` / ``python -m paulitree``)."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import bench, sim
from .architecture import get_architecture
from .compress import compress_ansatz, importance_report, random_compress
from .errors import SizeLimitError, ValidationError
from .pauli import ansatz_to_dict, dumps, load_ansatz, load_hamiltonian
from .qasm import emit_qasm, parse_qasm
from .routing import Layout, hierarchical_layout, merge_to_root, route_ansatz_baseline
from .synthesis import synthesize_ansatz_baseline
from .uccsd import ActiveSpace, generate_uccsd
from .vqe import VqeConfig, run_vqe

EXIT_OK, EXIT_VALIDATION, EXIT_SIZE = 0, 2, 3


def _write(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _sidecar(out: str | None, suffix: str) -> str | None:
    if out in (None, "-"):
        return None
    p = Path(out)
    return str(p.with_name(p.stem + suffix))


def _spaces(text: str):
    out = []
    for chunk in text.split(";"):
        n, eta = chunk.split(",")
        out.append((int(n), int(eta)))
    return out


def _floats(text: str):
    return [float(x) for x in text.split(",") if x.strip()]


def _values(args, a):
    if args.values is None:
        return [0.0] * a.num_parameters
    if args.values.endswith(".json"):
        return [float(v) for v in json.loads(Path(args.values).read_text())]
    return _floats(args.values)


# subcommands -------------------------------------------------------------------


def cmd_gen_uccsd(args):
    a = generate_uccsd(ActiveSpace(args.orbitals, args.electrons))
    _write(dumps(ansatz_to_dict(a)), args.out)


def cmd_compress(args):
    a = load_ansatz(args.ansatz)
    h = load_hamiltonian(args.hamiltonian)
    report = importance_report(a, h)
    c = random_compress(a, args.ratio, args.seed) if args.random else compress_ansatz(a, h, args.ratio)
    _write(dumps(ansatz_to_dict(c)), args.out)
    target = args.report or _sidecar(args.out, ".importance.csv")
    if target:
        Path(target).write_text(report.to_csv())
    else:
        sys.stdout.write(report.to_csv())


def cmd_compile(args):
    a = load_ansatz(args.ansatz)
    arch = get_architecture(args.arch)
    if args.layout == "hier":
        layout = hierarchical_layout(a.strings(), arch, a.n)
    else:
        layout = Layout.trivial(a.n, arch.num_qubits)
    values = _values(args, a)
    if args.method == "mtr":
        circuit, stats = merge_to_root(a, arch, layout, values)
    else:
        circuit, stats = route_ansatz_baseline(a, arch, layout, values)
    _write(emit_qasm(circuit), args.out)
    stats_doc = dict(stats.to_dict(), initial_layout=stats.initial_layout.l2p, final_layout=stats.final_layout.l2p)
    target = args.stats or _sidecar(args.out, ".stats.json")
    text = json.dumps(stats_doc, indent=2) + "\n"
    if target:
        Path(target).write_text(text)
    else:
        sys.stderr.write(text)


def cmd_emit_qasm(args):
    a = load_ansatz(args.ansatz)
    _write(emit_qasm(synthesize_ansatz_baseline(a, _values(args, a))), args.out)


def cmd_simulate(args):
    if (args.qasm is None) == (args.ansatz is None):
        raise ValidationError("give exactly one of --qasm or --ansatz")
    if args.qasm is not None:
        circuit = parse_qasm(Path(args.qasm).read_text())
    else:
        a = load_ansatz(args.ansatz)
        circuit = synthesize_ansatz_baseline(a, _values(args, a))
    if circuit.n > sim.MAX_STATE_QUBITS:
        raise SizeLimitError(f"statevector limited to {sim.MAX_STATE_QUBITS} qubits")
    psi = sim.apply_circuit(sim.basis_state(circuit.n), circuit)
    row = {"qubits": circuit.n, "gates": len(circuit), "cnots": circuit.cnot_count()}
    if args.hamiltonian:
        h = load_hamiltonian(args.hamiltonian)
        if h.n != circuit.n:
            raise ValidationError(f"Hamiltonian acts on {h.n} qubits, circuit on {circuit.n}")
        row["energy"] = sim.energy(psi, h)
        if h.n <= sim.MAX_DENSE_QUBITS:
            row["exact_ground_energy"] = sim.exact_ground_energy(h)
    else:
        probs = np.abs(psi) ** 2
        top = int(np.argmax(probs))
        row["most_likely"] = format(top, f"0{circuit.n}b")
        row["probability"] = float(probs[top])
    _write(bench.render([row], args.format), args.out)


def cmd_vqe(args):
    h = load_hamiltonian(args.hamiltonian)
    a = load_ansatz(args.ansatz)
    if args.ratio < 1.0:
        a = compress_ansatz(a, h, args.ratio)
    cfg = VqeConfig(
        optimizer=args.optimizer,
        energy_tol=args.tol,
        max_iters=args.max_iters,
        initial_params="random" if args.random_init else "zeros",
        seed=args.seed,
    )
    res = run_vqe(h, a, cfg)
    if args.format == "json":
        doc = {
            "final_energy": res.final_energy,
            "iterations": res.iterations,
            "evaluations": res.evaluations,
            "params": [float(x) for x in res.params],
            "trace": [{"iter": i, "energy": e, "grad_norm": g} for i, (e, g) in enumerate(zip(res.trace, res.grad_norms))],
        }
        _write(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        _write(res.trace_csv(), args.out)


def cmd_table1(args):
    spaces = _spaces(args.spaces) if args.spaces else bench.TABLE1_SPACES
    _write(bench.render(bench.cmd_table1(spaces), args.format), args.out)


def cmd_table2(args):
    spaces = _spaces(args.spaces) if args.spaces else bench.TABLE2_SPACES
    ratios = _floats(args.ratios) if args.ratios else bench.TABLE2_RATIOS
    hams = {}
    for spec in args.hamiltonian or []:
        key, path = spec.split("=", 1)
        n, eta = key.split(",")
        hams[(int(n), int(eta))] = load_hamiltonian(path)
    rows = bench.cmd_table2(spaces, ratios, args.arch, args.grid, hams, args.seed)
    _write(bench.render([r.to_dict(args.runtime) for r in rows], args.format), args.out)


def cmd_arch_report(args):
    names = args.names or ["XTree5Q", "XTree8Q", "XTree17Q", "XTree26Q", "Grid17Q"]
    _write(bench.render(bench.cmd_arch_report(names), args.format), args.out)


# parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS lets the flags appear before or after the subcommand
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS, help="output path (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="paulitree", parents=[common], description="UCCSD ansatz compression and tree-architecture compilation")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("gen-uccsd", cmd_gen_uccsd, "generate a Jordan-Wigner UCCSD ansatz")
    sp.add_argument("--orbitals", type=int, required=True, help="number of spin orbitals (qubits)")
    sp.add_argument("--electrons", type=int, required=True)

    sp = add("compress", cmd_compress, "keep the most important parameters")
    sp.add_argument("--ansatz", required=True)
    sp.add_argument("--hamiltonian", required=True)
    sp.add_argument("--ratio", type=float, required=True)
    sp.add_argument("--random", action="store_true", help="uniform random subset instead")
    sp.add_argument("--report", help="importance CSV path")

    sp = add("compile", cmd_compile, "map an ansatz onto an architecture")
    sp.add_argument("--ansatz", required=True)
    sp.add_argument("--arch", default="XTree17Q")
    sp.add_argument("--method", choices=("mtr", "baseline"), default="mtr")
    sp.add_argument("--layout", choices=("hier", "trivial"), default="hier")
    sp.add_argument("--values", help="comma list or JSON file of parameter values")
    sp.add_argument("--stats", help="stats JSON path")

    sp = add("emit-qasm", cmd_emit_qasm, "chain-synthesised logical circuit as QASM")
    sp.add_argument("--ansatz", required=True)
    sp.add_argument("--values")

    sp = add("simulate", cmd_simulate, "statevector simulation of a circuit")
    sp.add_argument("--qasm")
    sp.add_argument("--ansatz")
    sp.add_argument("--values")
    sp.add_argument("--hamiltonian")

    sp = add("vqe", cmd_vqe, "optimise ansatz parameters")
    sp.add_argument("--hamiltonian", required=True)
    sp.add_argument("--ansatz", required=True)
    sp.add_argument("--ratio", type=float, default=1.0)
    sp.add_argument("--optimizer", choices=("bfgs", "nelder-mead"), default="bfgs")
    sp.add_argument("--tol", type=float, default=1e-6)
    sp.add_argument("--max-iters", type=int, default=500)
    sp.add_argument("--random-init", action="store_true")

    sp = add("table1", cmd_table1, "UCCSD structure counts")
    sp.add_argument("--spaces", help='e.g. "4,2;6,2"')

    sp = add("table2", cmd_table2, "mapping overhead per compression ratio")
    sp.add_argument("--spaces", help='e.g. "4,2;6,2"')
    sp.add_argument("--ratios", help="e.g. 0.1,0.5")
    sp.add_argument("--arch", default="XTree17Q")
    sp.add_argument("--grid", default="Grid17Q")
    sp.add_argument("--hamiltonian", action="append", help="N,ETA=path; repeatable")
    sp.add_argument("--runtime", action="store_true", help="add a runtime_ms column (not reproducible)")

    sp = add("arch-report", cmd_arch_report, "edge counts, degrees, distances")
    sp.add_argument("names", nargs="*")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    for key, default in (("seed", 0), ("out", None), ("format", "csv")):
        if not hasattr(args, key):
            setattr(args, key, default)
    try:
        args.func(args)
    except SizeLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except (ValidationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK
