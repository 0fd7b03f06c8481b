"""OpenQASM 2.0 output and a reader for the subset we emit."""

from __future__ import annotations

import ast
import math
import operator
import re

from .errors import ValidationError
from .synthesis import Circuit, Gate

HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'

_SYMBOLIC = {
    math.pi: "pi",
    -math.pi: "-pi",
    math.pi / 2: "pi/2",
    -math.pi / 2: "-pi/2",
    math.pi / 4: "pi/4",
    -math.pi / 4: "-pi/4",
}


def format_angle(angle: float) -> str:
    if angle in _SYMBOLIC:
        return _SYMBOLIC[angle]
    # repr is the shortest exact round-trip form (up to 17 significant digits)
    return repr(float(angle))


def emit_qasm(c: Circuit) -> str:
    lines = [HEADER.rstrip("\n"), f"qreg q[{c.n}];"]
    for g in c.gates:
        q = g.qubits
        if g.kind == "X":
            lines.append(f"x q[{q[0]}];")
        elif g.kind == "H":
            lines.append(f"h q[{q[0]}];")
        elif g.kind == "RX":
            lines.append(f"rx({format_angle(g.angle)}) q[{q[0]}];")
        elif g.kind == "RZ":
            lines.append(f"rz({format_angle(g.angle)}) q[{q[0]}];")
        elif g.kind == "CNOT":
            lines.append(f"cx q[{q[0]}],q[{q[1]}];")
        elif g.kind == "SWAP":
            a, b = q
            lines += [f"cx q[{a}],q[{b}];", f"cx q[{b}],q[{a}];", f"cx q[{a}],q[{b}];"]
    return "\n".join(lines) + "\n"


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}


def _eval_angle(text: str) -> float:
    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return math.pi
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        raise ValidationError(f"unsupported angle expression {text!r}")

    try:
        return ev(ast.parse(text, mode="eval"))
    except SyntaxError as exc:
        raise ValidationError(f"bad angle expression {text!r}") from exc


_STMT = re.compile(r"^(?P<name>[a-z]+)(\((?P<arg>[^)]*)\))?\s+(?P<args>.+)$")
_QARG = re.compile(r"^(?P<reg>[A-Za-z_]\w*)\[(?P<idx>\d+)\]$")


def parse_qasm(text: str) -> Circuit:
    """Read OpenQASM 2.0 using x, h, rx, rz, cx and swap on a single register."""
    body = re.sub(r"//[^\n]*", "", text)
    statements = [s.strip() for s in body.split(";") if s.strip()]
    if not statements or not statements[0].startswith("OPENQASM 2.0"):
        raise ValidationError("missing 'OPENQASM 2.0' header")
    n = None
    reg = None
    gates = []
    for stmt in statements[1:]:
        if stmt.startswith("include"):
            continue
        if stmt.startswith("qreg"):
            m = re.match(r"qreg\s+([A-Za-z_]\w*)\[(\d+)\]$", stmt)
            if not m or n is not None:
                raise ValidationError(f"unsupported register declaration {stmt!r}")
            reg, n = m.group(1), int(m.group(2))
            continue
        if stmt.startswith("barrier"):
            continue
        m = _STMT.match(stmt)
        if not m or n is None:
            raise ValidationError(f"cannot parse statement {stmt!r}")
        qubits = []
        for qa in m.group("args").split(","):
            mq = _QARG.match(qa.strip())
            if not mq or mq.group("reg") != reg:
                raise ValidationError(f"bad qubit argument {qa!r}")
            qubits.append(int(mq.group("idx")))
        name = m.group("name")
        if name in ("x", "h"):
            gates.append(Gate(name.upper(), tuple(qubits)))
        elif name in ("rx", "rz"):
            if m.group("arg") is None:
                raise ValidationError(f"{name} needs an angle")
            gates.append(Gate(name.upper(), tuple(qubits), angle=_eval_angle(m.group("arg"))))
        elif name == "cx":
            gates.append(Gate("CNOT", tuple(qubits)))
        elif name == "swap":
            gates.append(Gate("SWAP", tuple(qubits)))
        else:
            raise ValidationError(f"unsupported gate {name!r}")
    if n is None:
        raise ValidationError("no qreg declared")
    return Circuit(n, tuple(gates))
