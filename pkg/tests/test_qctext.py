import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qtransforms import ir, qctext
from qtransforms.qctext import ParseError
from qtransforms.synth import BUILDERS
from qtransforms.lower import lower_circuit

from oracles import random_circuit


def test_layout():
    c = ir.Circuit(3, 1, (ir.h_gate(0), ir.x_gate(1, ones=(3,), zeros=(0, 2))), "demo")
    assert qctext.dumps(c).splitlines() == [
        "qc-text v1", "qubits 3", "ancillas 1", "# label: demo", "H 0", "X 1 +3 -0 -2"]


def test_u_line_with_negative_floats_and_conditions():
    text = "qc-text v1\nqubits 4\nancillas 0\nU 0 +3 -1 -2 0 0 -1 0 1 0 0 0\n"
    (g,) = qctext.loads(text).gates
    assert g.ones == {3} and g.zeros == {1, 2}
    np.testing.assert_array_equal(g.matrix, [[0, -1], [1, 0]])


def test_comments_and_blank_lines():
    text = "# leading\nqc-text v1\n\nqubits 2   # two\nancillas 0\nH 1 # butterfly\n"
    c = qctext.loads(text)
    assert c.data_qubits == 2 and len(c) == 1


def test_all_gate_kinds_round_trip():
    gates = (
        ir.phase_gate(0, 0.125, ones=(1,)),
        ir.rot_gate(1, -2.5, zeros=(0,)),
        ir.z_gate(2),
        ir.BitReversal(0, 3),
        ir.BitReversal(1, 2, ones=frozenset({0})),
        ir.RotateWires(0, 3, "left"),
        ir.RotateWires(0, 1, "right", zeros=frozenset({3})),
        ir.WireSwap(0, 2, ones=frozenset({3})),
        ir.TwosComplement(0, 2, ones=frozenset({3})),
        ir.Transposition(0, 2, 1, 6, zeros=frozenset({3})),
    )
    c = ir.Circuit(4, gates=gates)
    text = qctext.dumps(c)
    assert qctext.loads(text) == c
    assert qctext.dumps(qctext.loads(text)) == text


@pytest.mark.parametrize("transform", sorted(BUILDERS))
@pytest.mark.parametrize("n", [1, 3, 5])
@pytest.mark.parametrize("lower", [None, "relaxed", "strict"])
def test_emitted_files_round_trip(transform, n, lower):
    c = BUILDERS[transform](n)
    if lower:
        c, _ = lower_circuit(c, strict=lower == "strict")
    text = qctext.dumps(c)
    back = qctext.loads(text)
    assert qctext.dumps(back) == text
    assert back == c


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_random_circuit_round_trip(seed):
    c = random_circuit(np.random.default_rng(seed), 5, 12)
    text = qctext.dumps(c)
    assert qctext.dumps(qctext.loads(text)) == text


def test_floats_printed_with_17_digits():
    line = qctext.format_gate(ir.phase_gate(0, 0.1))
    assert line == "PHASE 0 0.10000000000000001"


@pytest.mark.parametrize("text, line", [
    ("qc-text v2\nqubits 1\nancillas 0\n", 1),
    ("qc-text v1\nqubit 1\nancillas 0\n", 2),
    ("qc-text v1\nqubits 1\nancillas x\n", 3),
    ("qc-text v1\nqubits 2\nancillas 0\nH 0\nFOO 1\n", 5),
    ("qc-text v1\nqubits 2\nancillas 0\nH 0\nX 3\n", 5),
    ("qc-text v1\nqubits 2\nancillas 0\nX 0 *1\n", 4),
    ("qc-text v1\nqubits 2\nancillas 0\nU 0 1 0 0 0 0 0 1\n", 4),
    ("qc-text v1\nqubits 2\nancillas 0\nU 0 1 0 1 0 0 0 1 0\n", 4),
    ("qc-text v1\nqubits 2\nancillas 0\nX 0 +0\n", 4),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        qctext.loads(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)
