import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import same_up_to_phase, unitary
from paulitree.errors import ValidationError
from paulitree.pauli import parse_pauli
from paulitree.qasm import HEADER, emit_qasm, format_angle, parse_qasm
from paulitree.synthesis import Circuit, Gate, synthesize, synthesize_ansatz_baseline
from paulitree.uccsd import ActiveSpace, generate_uccsd


def test_header_and_symbolic_angle():
    text = emit_qasm(Circuit(1, (Gate("RZ", (0,), angle=math.pi),)))
    assert text.startswith(HEADER)
    assert "rz(pi) q[0];" in text.splitlines()


def test_swap_expands_to_three_cx():
    lines = emit_qasm(Circuit(2, (Gate("SWAP", (0, 1)),))).splitlines()
    assert lines[-3:] == ["cx q[0],q[1];", "cx q[1],q[0];", "cx q[0],q[1];"]


@given(st.floats(-10, 10, allow_nan=False))
def test_angle_text_round_trips_exactly(x):
    assert float(eval(format_angle(x), {"pi": math.pi})) == x


def test_xiyz_round_trip():
    c = synthesize(parse_pauli("XIYZ"), 0.37)
    back = parse_qasm(emit_qasm(c))
    assert back == c
    assert same_up_to_phase(unitary(back), unitary(c))


@settings(max_examples=10, deadline=None)
@given(st.lists(st.floats(-2, 2), min_size=3, max_size=3))
def test_ansatz_round_trip(values):
    c = synthesize_ansatz_baseline(generate_uccsd(ActiveSpace(4, 2)), values)
    back = parse_qasm(emit_qasm(c))
    assert np.allclose(unitary(back), unitary(c), atol=1e-12)


def test_parser_accepts_foreign_spacing_and_comments():
    text = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n// hi\nqreg r[2];\nrz(-pi/4) r[1];\nswap r[0], r[1];\nbarrier r[0],r[1];\n'
    c = parse_qasm(text)
    assert c.n == 2
    assert c.gates[0].angle == pytest.approx(-math.pi / 4)
    assert c.gates[1].kind == "SWAP"


@pytest.mark.parametrize(
    "text",
    [
        "qreg q[1];",
        'OPENQASM 2.0;\nqreg q[1];\nu3(0,0,0) q[0];',
        'OPENQASM 2.0;\nqreg q[1];\nrz(__import__("os")) q[0];',
        'OPENQASM 2.0;\nqreg q[1];\nx p[0];',
        'OPENQASM 2.0;\nx q[0];',
    ],
)
def test_parser_rejects(text):
    with pytest.raises(ValidationError):
        parse_qasm(text)
