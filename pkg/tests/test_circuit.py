import json

import pytest
from hypothesis import given, settings

from qreuse.circuit import (
    Circuit, CircuitError, DynamicInputError, Instruction, Kind, compose, depth, dumps, from_ops, gate,
    is_normalized, measure, normalize, parse_circuit, reset,
)
from qreuse.generators import Family, generate, spec

from circuits import fig1a, random_circuits as circuits


def _doc(width, instrs):
    return json.dumps({"width": width, "instructions": instrs})


def test_parse_fig1a_document():
    c = parse_circuit(dumps(fig1a()))
    assert c.width == 3
    assert len(c) == 11
    assert [ins.kind for ins in c][:3] == [Kind.RESET] * 3
    assert [ins.id for ins in c] == list(range(11))


def test_parse_trivial_and_optional_fields():
    text = _doc(1, [{"id": 7, "type": "RESET", "qubits": [0]},
                    {"id": 9, "type": "MEASURE", "gate": None, "qubits": [0], "param": None, "group": None}])
    c = parse_circuit(text)
    assert c.width == 1 and [ins.id for ins in c] == [0, 1]


@pytest.mark.parametrize("instr", [
    {"id": 0, "type": "GATE", "gate": "CX", "qubits": [2, 2]},
    {"id": 0, "type": "GATE", "gate": "H", "qubits": [3]},
    {"id": 0, "type": "BOGUS", "qubits": [0]},
    {"id": 0, "type": "GATE", "qubits": [0]},
    {"id": 0, "type": "MEASURE", "qubits": [0], "param": 0.5},
    {"id": 0, "type": "RESET", "qubits": [0], "group": 1},
])
def test_parse_rejects_bad_instruction(instr):
    with pytest.raises(CircuitError):
        parse_circuit(_doc(3, [instr]))


@pytest.mark.parametrize("text", ["{", "[]", '{"width": 0, "instructions": []}', '{"width": 2}'])
def test_parse_rejects_malformed(text):
    with pytest.raises(CircuitError):
        parse_circuit(text)


def test_normalize_wraps_bare_gates():
    c = normalize(Circuit(3, (gate("CX", 0, 1), gate("H", 2))))
    kinds = [ins.kind for ins in c]
    assert kinds == [Kind.RESET] * 3 + [Kind.GATE] * 2 + [Kind.MEASURE] * 3
    assert [ins.qubit for ins in c.measurements] == [0, 1, 2]


def test_normalize_idempotent_on_fig1a():
    c = fig1a()
    assert normalize(c) == c
    assert is_normalized(c)


def test_normalize_rejects_mid_circuit_reset():
    c = Circuit(1, (gate("H", 0), reset(0), gate("X", 0)))
    with pytest.raises(DynamicInputError, match="dynamic input"):
        normalize(c)


def test_normalize_rejects_use_after_measure():
    with pytest.raises(DynamicInputError):
        normalize(Circuit(1, (measure(0), gate("X", 0))))


def test_compose_gate_order_and_endpoints():
    a = from_ops(3, [gate("H", 0), gate("CX", 0, 1)])
    b = from_ops(3, [gate("CX", 1, 2)])
    c = compose(a, b)
    assert [(i.gate, i.qubits) for i in c.gates] == [("H", (0,)), ("CX", (0, 1)), ("CX", (1, 2))]
    assert len(c) == 3 + 3 + 3


def test_compose_with_empty_is_identity():
    c = fig1a()
    assert compose(c, from_ops(3, [])) == c


def test_compose_width_mismatch():
    with pytest.raises(CircuitError):
        compose(from_ops(3, []), from_ops(4, []))


def test_depth_examples():
    assert depth(from_ops(1, [gate("H", 0)])) == 3
    assert depth(from_ops(4, [])) == 2
    # RESET, H, CX(0,1), CX(1,2), MEASURE on the longest chain
    assert depth(fig1a()) == 5


def test_instruction_invariants():
    with pytest.raises(CircuitError):
        Instruction(0, Kind.GATE, (), "H")
    with pytest.raises(CircuitError):
        Instruction(0, Kind.RESET, (0, 1))


def test_strip_single_qubit_gates_keeps_multi():
    c = fig1a().without_single_qubit_gates()
    assert [ins.gate for ins in c.gates] == ["CX", "CX"]


# -- properties --------------------------------------------------------------

@given(circuits())
@settings(max_examples=80, deadline=None)
def test_roundtrip_parse_dumps(c):
    assert parse_circuit(dumps(c)) == c


@given(circuits())
@settings(max_examples=80, deadline=None)
def test_normalize_idempotent_and_preserves_gates(c):
    again = normalize(c)
    assert again == c
    assert again.gates == c.gates


@given(circuits(max_n=4), circuits(max_n=4), circuits(max_n=4))
@settings(max_examples=50, deadline=None)
def test_compose_associative_on_gates(a, b, c):
    if not (a.width == b.width == c.width):
        return
    left = compose(compose(a, b), c)
    right = compose(a, compose(b, c))
    assert [(i.gate, i.qubits, i.param) for i in left.gates] == [(i.gate, i.qubits, i.param) for i in right.gates]


def test_generated_circuits_are_normalized():
    for s in [spec(Family.BV, n=4), spec(Family.CLUSTER, w=2, d=3), spec(Family.ADDER, k=2)]:
        assert is_normalized(generate(s))
