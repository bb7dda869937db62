import math

import numpy as np
import pytest

from qloc.anderson import Lattice2D, SingleParticleState, WavepacketSpec, build_wavepacket
from qloc.circuit import GateKind, apply, loads, two_qubit_depth, two_qubit_gate_count
from qloc.exceptions import InvalidInput
from qloc.stateprep import AmplitudeTreePlan, synthesize_wavepacket_circuit, w_state


def _fidelity(target: SingleParticleState, backend: str = "sector") -> float:
    state = apply(synthesize_wavepacket_circuit(target), backend=backend).state
    if backend == "full":
        amplitudes = state.one_hot_amplitudes()
    else:
        amplitudes = state.amplitudes
    return float(abs(np.vdot(target.amplitudes, amplitudes)) ** 2)


def test_single_site_is_one_x():
    circuit = synthesize_wavepacket_circuit(SingleParticleState.one_hot(5, 3))
    assert [GateKind.X] == [op.kind for op in circuit.ops]
    assert 0 == two_qubit_gate_count(circuit)
    assert 1.0 == pytest.approx(_fidelity(SingleParticleState.one_hot(5, 3)))


def test_w_state_circuit():
    circuit = synthesize_wavepacket_circuit(w_state(8))
    assert 14 == two_qubit_gate_count(circuit)
    assert 6 == two_qubit_depth(circuit)
    assert 1.0 == pytest.approx(_fidelity(w_state(8), backend="full"), abs=1e-10)


@pytest.mark.parametrize("support", [1, 2, 3, 7, 16, 33, 64])
def test_gate_count_and_depth(support: int):
    amplitudes = np.zeros(64, dtype=complex)
    amplitudes[:support] = 1
    circuit = synthesize_wavepacket_circuit(SingleParticleState.normalized(amplitudes))

    assert 2 * support - 2 == two_qubit_gate_count(circuit)
    assert two_qubit_depth(circuit) <= 2 * math.ceil(math.log2(support))


def test_random_complex_targets():
    generator = np.random.default_rng(7)
    for _ in range(200):
        num_sites = int(generator.integers(1, 63))
        amplitudes = generator.normal(size=num_sites) + 1j * generator.normal(size=num_sites)
        # Sparse supports exercise trees over scattered sites
        amplitudes[generator.random(num_sites) < 0.3] = 0
        if not np.any(amplitudes):
            amplitudes[0] = 1
        target = SingleParticleState.normalized(amplitudes)
        assert _fidelity(target) >= 1 - 1e-10


def test_negative_real_amplitudes():
    target = SingleParticleState.normalized(np.array([-1, 1, -1j, 1j]))
    assert _fidelity(target, backend="full") == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize(
    "k0,support",
    [
        ((0.0, 0.0), 36),
        ((0.5 * math.pi, -0.1 * math.pi), 32),
    ],
)
def test_truncated_wavepacket_gate_count(k0, support: int):
    lattice = Lattice2D(8, 7)
    spec = WavepacketSpec(k0=k0, sigma_p=(0.3, 0.35), x0=(3.5, 3), trunc_threshold=0.01)
    target = build_wavepacket(lattice, spec)

    assert support == len(target.support())
    assert 2 * support - 2 == two_qubit_gate_count(synthesize_wavepacket_circuit(target))


def test_plan_serializes_to_circuit_text():
    circuit = synthesize_wavepacket_circuit(w_state(4))
    assert circuit.ops == loads(circuit.dumps()).ops
    assert len(circuit) == circuit.prologue


def test_plan__negative():
    with pytest.raises(InvalidInput):
        w_state(0)
    with pytest.raises(InvalidInput):
        AmplitudeTreePlan(num_qubits=3, support=(), node_angles=(), phase_angles=())
