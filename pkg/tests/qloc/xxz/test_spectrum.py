import math

import numpy as np
import pytest

from qloc.exceptions import InvalidInput
from qloc.xxz import (
    XXZModel,
    exact_lowest_excitations,
    ground_state,
    momentum_basis,
    momentum_grid,
    xxz_hamiltonian,
)


def test_momentum_grid():
    grid = momentum_grid(10)
    assert 10 == len(grid)
    assert math.pi == pytest.approx(grid[-1])
    assert np.all(grid > -math.pi)


def test_momentum_blocks_are_complete():
    model = XXZModel(10, 0.5)
    dims = [momentum_basis(model, m).shape[1] for m in range(-4, 6)]
    assert len(model.basis) == sum(dims)


def test_momentum_block_is_isometry():
    model = XXZModel(10, 0.5)
    V = momentum_basis(model, 2).toarray()
    assert np.allclose(V.conj().T @ V, np.eye(V.shape[1]))
    H = xxz_hamiltonian(model).toarray()
    # The block is invariant under H
    projected = V @ (V.conj().T @ (H @ V))
    assert np.allclose(projected, H @ V)


@pytest.mark.parametrize("N", [10, 14])
def test_free_fermion_gap(N: int):
    spectrum = exact_lowest_excitations(XXZModel(N, 0.0))
    k = 2 * math.pi / N

    assert 0.0 == pytest.approx(spectrum.excitation(0.0), abs=1e-12)
    assert 4 * math.sin(math.pi / N) == pytest.approx(spectrum.excitation(k), abs=1e-9)
    assert 4 * math.sin(math.pi / N) == pytest.approx(spectrum.excitation(-k), abs=1e-9)


def test_ground_energy_agrees_with_sector():
    model = XXZModel(10, 0.5)
    spectrum = exact_lowest_excitations(model)
    value, _ = ground_state(model)
    assert value == pytest.approx(spectrum.ground_energy, abs=1e-10)


@pytest.mark.parametrize("delta", [-0.5, 0.5])
def test_time_reversal(delta: float):
    spectrum = exact_lowest_excitations(XXZModel(10, delta))
    for k in spectrum.momenta():
        if abs(k - math.pi) < 1e-9:
            continue
        assert spectrum.excitation(k) == pytest.approx(spectrum.excitation(-k), abs=1e-9)


@pytest.mark.parametrize("N", [10, 14])
@pytest.mark.parametrize("delta", [-0.5, -0.25, 0.25, 0.5])
def test_energy_hierarchy(N: int, delta: float):
    spectrum = exact_lowest_excitations(XXZModel(N, delta))
    for k in spectrum.momenta():
        if abs(k) >= math.pi / 2:
            continue
        partner = k - math.pi if k > 0 else k + math.pi
        assert spectrum.excitation(k) < spectrum.excitation(partner)


def test_levels_hold_their_multiplets():
    spectrum = exact_lowest_excitations(XXZModel(10, 0.0))
    for k in spectrum.momenta():
        level = spectrum.level(k)
        assert level.multiplicity == level.states.shape[1]
        assert level.multiplicity >= 1
    assert {"N", "delta", "k", "excitation", "multiplicity"} == set(spectrum.rows()[0])


def test_level_off_grid():
    spectrum = exact_lowest_excitations(XXZModel(6, 0.5))
    with pytest.raises(InvalidInput):
        spectrum.level(0.1)
