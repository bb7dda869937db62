import math

import numpy as np
import pytest

from qloc.anderson import (
    Chain,
    DisorderRealization,
    Lattice2D,
    SingleParticleState,
    WavepacketSpec,
    build_hamiltonian,
    build_wavepacket,
    exact_evolve,
)
from qloc.circuit import (
    TrotterPlan,
    build_trotter_circuit,
    hopping_layers,
    state_distance,
    state_error,
    trotter_evolve,
    trotter_vs_exact,
    two_qubit_gate_count,
)
from qloc.exceptions import InvalidInput
from qloc.stateprep import synthesize_wavepacket_circuit


@pytest.mark.parametrize("lattice", [Lattice2D(8, 7), Lattice2D(4, 4), Chain(5)])
def test_hopping_layers_cover_bonds(lattice):
    layers = hopping_layers(lattice)
    flattened = sorted(bond for layer in layers for bond in layer)
    assert sorted((i, j) for i, j, _ in lattice.bonds()) == flattened
    assert 2 * lattice.dimension == len(layers)


def test_hopping_layers_are_disjoint_on_even_lattice():
    for layer in hopping_layers(Lattice2D(4, 6)):
        sites = [site for bond in layer for site in bond]
        assert len(sites) == len(set(sites))


def test_trotter_plan_from_time():
    lattice = Lattice2D(8, 7)
    plan = TrotterPlan.from_time(lattice, DisorderRealization.clean(56), 1.0, 0.25)
    assert 4 == plan.n_steps
    assert 1.0 == plan.time

    with pytest.raises(InvalidInput):
        TrotterPlan.from_time(lattice, DisorderRealization.clean(56), 1.0, 0.3)
    with pytest.raises(InvalidInput):
        TrotterPlan.from_time(lattice, DisorderRealization.clean(56), 1.0, 0.0)
    with pytest.raises(InvalidInput):
        TrotterPlan(dt=0.25, n_steps=1, disorder=DisorderRealization.clean(5), lattice=lattice)


def _uniform(num_sites: int, support: int) -> SingleParticleState:
    amplitudes = np.zeros(num_sites, dtype=complex)
    amplitudes[:support] = 1
    return SingleParticleState.normalized(amplitudes)


@pytest.mark.parametrize(
    "support,t,expected",
    [
        (36, 0.0, 70),
        (32, 0.0, 62),
        (36, 1.0, 966),
        (32, 1.0, 958),
        (56, 2.0, 1902),
        (56, 3.0, 2798),
    ],
)
def test_prep_and_trotter_gate_counts(support: int, t: float, expected: int):
    lattice = Lattice2D(8, 7)
    disorder = DisorderRealization.from_master(0, 0, 6.0, lattice.num_sites)
    plan = TrotterPlan.from_time(lattice, disorder, t, 0.25)
    prep = synthesize_wavepacket_circuit(_uniform(lattice.num_sites, support))
    circuit = prep.then(build_trotter_circuit(plan))

    assert expected == two_qubit_gate_count(circuit)


def test_trotter_step_has_four_gates_per_site():
    lattice = Lattice2D(8, 7)
    plan = TrotterPlan(dt=0.25, n_steps=1, disorder=DisorderRealization.clean(56), lattice=lattice)
    assert 4 * 56 == two_qubit_gate_count(build_trotter_circuit(plan))


def test_trotter_converges_to_exact():
    lattice = Lattice2D(8, 7)
    disorder = DisorderRealization.from_master(0, 0, 6.0, lattice.num_sites)
    spec = WavepacketSpec(k0=(0.0, 0.0), sigma_p=(0.3, 0.35), x0=(4, 3))
    comparison = trotter_vs_exact(lattice, disorder, spec, 2.0, [0.25, 0.125, 0.0625])

    assert comparison.errors == sorted(comparison.errors, reverse=True)
    assert comparison.errors[-1] < comparison.errors[0] / 2
    assert comparison.exact_ipr == pytest.approx(comparison.iprs[-1], abs=0.01)
    assert 3 == len(comparison.rows())


@pytest.mark.parametrize(
    "k0",
    [
        (0.0, 0.0),
        (0.5 * math.pi, -0.1 * math.pi),
    ],
)
def test_trotter_ipr_error_at_hardware_step(k0):
    lattice = Lattice2D(8, 7)
    disorder = DisorderRealization.from_master(0, 0, 6.0, lattice.num_sites)
    spec = WavepacketSpec(k0=k0, sigma_p=(0.3, 0.35), x0=(4, 3))
    comparison = trotter_vs_exact(lattice, disorder, spec, 2.0, [0.25, 0.125, 0.0625])
    ipr_errors = [abs(value - comparison.exact_ipr) for value in comparison.iprs]

    assert ipr_errors[0] < 0.01
    assert ipr_errors == sorted(ipr_errors, reverse=True)


def test_trotter_first_order_scaling():
    lattice = Chain(6)
    disorder = DisorderRealization.from_master(2, 0, 2.0, 6)
    spec = WavepacketSpec(k0=(0.5,), sigma_p=(0.6,), x0=(3,))
    errors = state_error(lattice, disorder, spec, 1.0, [0.02, 0.01])
    assert 2.0 == pytest.approx(errors[0] / errors[1], rel=0.1)


def test_trotter_matches_exact_for_small_step():
    lattice = Chain(4)
    disorder = DisorderRealization.from_master(1, 0, 3.0, 4)
    H = build_hamiltonian(lattice, disorder)
    packet = build_wavepacket(lattice, WavepacketSpec(k0=(0.0,), sigma_p=(0.5,)))
    exact = exact_evolve(H, packet, 0.5)
    small = TrotterPlan.from_time(lattice, disorder, 0.5, 0.0005)
    assert state_distance(exact, trotter_evolve(small, packet)) < 1e-2


def test_state_distance_ignores_global_phase():
    state = SingleParticleState.normalized(np.array([1, 2j, -1]))
    rotated = SingleParticleState(state.amplitudes * np.exp(0.7j))
    assert 0.0 == pytest.approx(state_distance(state, rotated), abs=1e-7)
    other = SingleParticleState.one_hot(3, 0)
    assert state_distance(state, other) > 0
    assert math.sqrt(2) == pytest.approx(
        state_distance(SingleParticleState.one_hot(3, 1), other)
    )
