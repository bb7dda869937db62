import math

import pytest

from qloc.circuit import Circuit, GateKind, GateOp, dumps, loads, two_qubit_gate_count
from qloc.exceptions import CircuitFormatError, InvalidInput


def _feedforward_circuit() -> Circuit:
    return Circuit(
        num_qubits=3,
        ops=[
            GateOp.x(0),
            GateOp.ry(1, math.pi / 3),
            GateOp.cnot(0, 1),
            GateOp.measure(1, 0),
            GateOp.controlled(0, GateOp.xxz(1, 2, -0.25, 0.1)),
            GateOp.rz(2, -1e-17),
        ],
        num_clbits=1,
        prologue=3,
    )


def test_circuit_text_format():
    circuit = _feedforward_circuit()
    text = dumps(circuit)

    assert text.startswith("CIRCUIT 3 1 3\n")
    assert "IF 0 XXZ 1 2 -0.25 0.10000000000000001\n" in text

    parsed = loads(text)
    assert circuit.ops == parsed.ops
    assert 3 == parsed.prologue
    assert dumps(parsed) == text


def test_circuit_loads_skips_comments():
    circuit = loads("# trotter step\nCIRCUIT 2 0 0\n\nXXZ 0 1 -0.25 0\n")
    assert [GateOp.xxz(0, 1, -0.25, 0.0)] == circuit.ops


@pytest.mark.parametrize(
    "text,line_no",
    [
        ("X 0\n", 1),
        ("CIRCUIT 2 0 0\nH 0\n", 2),
        ("CIRCUIT 2 0 0\nX 0\nRY 1\n", 3),
        ("CIRCUIT 2 0 0\nCNOT 0 5\n", 2),
        ("CIRCUIT 2 1 0\nIF 0 X 1\n", 2),
        ("CIRCUIT 2 0 4\nX 0\n", 1),
        ("CIRCUIT 2 0 0\nRZ 0 half\n", 2),
    ],
)
def test_circuit_loads__negative(text: str, line_no: int):
    with pytest.raises(CircuitFormatError) as excinfo:
        loads(text)
    assert line_no == excinfo.value.line_no


def test_gate_arity():
    with pytest.raises(InvalidInput):
        GateOp(GateKind.RY, (0,))
    with pytest.raises(InvalidInput):
        GateOp.cnot(1, 1)
    with pytest.raises(InvalidInput):
        GateOp.controlled(0, GateOp.measure(0, 0))


def test_circuit_checks_indices():
    circuit = Circuit(num_qubits=2, num_clbits=1)
    with pytest.raises(InvalidInput):
        circuit.append(GateOp.x(2))
    with pytest.raises(InvalidInput):
        circuit.append(GateOp.controlled(0, GateOp.x(0)))
    with pytest.raises(InvalidInput):
        circuit.append(GateOp.measure(0, 1))
    with pytest.raises(InvalidInput):
        Circuit(num_qubits=0)


def test_two_qubit_gate_weights():
    circuit = Circuit(
        num_qubits=4,
        ops=[
            GateOp.cnot(0, 1),
            GateOp.xxz(2, 3, 0.1, 0.0),
            GateOp.xxz(1, 2, 0.1, 0.2),
            GateOp.rz(0, 0.3),
        ],
    )
    assert 1 + 2 + 3 == two_qubit_gate_count(circuit)
    assert 5 == circuit.two_qubit_depth()


def test_circuit_then_keeps_prologue():
    first = Circuit(num_qubits=2, ops=[GateOp.x(0)], prologue=1)
    second = Circuit(num_qubits=2, ops=[GateOp.xxz(0, 1, 0.1, 0.0)])
    joined = first.then(second)

    assert 2 == len(joined)
    assert 1 == joined.prologue
    assert 1 == len(first)
    with pytest.raises(InvalidInput):
        first.then(Circuit(num_qubits=3))
