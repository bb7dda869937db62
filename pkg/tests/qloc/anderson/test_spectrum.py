import numpy as np
import pytest

from qloc.anderson import (
    DisorderRealization,
    Lattice2D,
    WavepacketSpec,
    build_hamiltonian,
    build_wavepacket,
    diagonalize,
    exact_evolve,
    ipr,
    spectrum_overlaps,
)
from qloc.exceptions import InvalidInput


def _setup():
    lattice = Lattice2D(6, 5)
    disorder = DisorderRealization.from_master(1, 0, 4.0, lattice.num_sites)
    H = build_hamiltonian(lattice, disorder)
    state = build_wavepacket(
        lattice, WavepacketSpec(k0=(0.5, -0.3), sigma_p=(0.4, 0.4), x0=(3, 2))
    )
    return H, state


def test_diagonalize_rescaled_energies():
    H, _ = _setup()
    spectrum = diagonalize(H)

    assert 0.0 == spectrum.rescaled_energies[0]
    assert 1.0 == spectrum.rescaled_energies[-1]
    assert np.all(np.diff(spectrum.rescaled_energies) >= 0)
    assert np.allclose(H @ spectrum.eigenvectors, spectrum.eigenvectors * spectrum.energies)


def test_diagonalize_flat_spectrum():
    with pytest.raises(InvalidInput):
        diagonalize(np.eye(4))


def test_exact_evolve_unitary():
    H, state = _setup()
    spectrum = diagonalize(H)
    assert state is exact_evolve(spectrum, state, 0.0)

    evolved = exact_evolve(spectrum, state, 2.5)
    assert 1.0 == pytest.approx(np.sum(evolved.probabilities()))

    back = exact_evolve(spectrum, evolved, -2.5)
    assert np.allclose(back.amplitudes, state.amplitudes)


def test_exact_evolve_matches_expm():
    import scipy.linalg

    H, state = _setup()
    expected = scipy.linalg.expm(-1j * H * 0.7) @ state.amplitudes
    assert np.allclose(expected, exact_evolve(H, state, 0.7).amplitudes)


def test_spectrum_overlaps_sum_to_one():
    H, state = _setup()
    energies, weights = spectrum_overlaps(H, state)

    assert len(energies) == len(weights) == 30
    assert 1.0 == pytest.approx(weights.sum())
    assert ipr(state) > 0
