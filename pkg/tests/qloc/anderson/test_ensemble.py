import math

import numpy as np
import pytest

from qloc.anderson import (
    Chain,
    DisorderRealization,
    Lattice2D,
    WavepacketSpec,
    ipr_timeseries,
    ipr_timeseries_ensemble,
    ipr_vs_energy,
    overlap_histogram,
    scan_momentum,
    select_representative_disorder,
)
from qloc.exceptions import InvalidInput


def test_ipr_vs_energy_counts():
    lattice = Lattice2D(4, 4)
    curve = ipr_vs_energy(lattice, 3.0, 5, 10, master_seed=0)

    assert 5 * 16 == curve.counts.sum()
    assert np.all((curve.means >= 1 / 16) & (curve.means <= 1))
    assert np.all((curve.centers > 0) & (curve.centers < 1))
    assert len(curve.rows()) == len(curve.centers)


def test_ipr_vs_energy_worker_independent():
    lattice = Lattice2D(4, 3)
    serial = ipr_vs_energy(lattice, 6.0, 6, 8, master_seed=11, workers=1)
    threaded = ipr_vs_energy(lattice, 6.0, 6, 8, master_seed=11, workers=4)

    assert np.array_equal(serial.means, threaded.means)
    assert np.array_equal(serial.stderrs, threaded.stderrs)


def test_ipr_grows_with_disorder():
    chain = Chain(40)
    weak = ipr_vs_energy(chain, 0.5, 10, 1, master_seed=3)
    strong = ipr_vs_energy(chain, 12.0, 10, 1, master_seed=3)
    assert strong.means[0] > weak.means[0]


def test_ipr_vs_energy__negative():
    with pytest.raises(InvalidInput):
        ipr_vs_energy(Chain(5), 1.0, 0, 5, master_seed=0)
    with pytest.raises(InvalidInput):
        ipr_vs_energy(Chain(5), 1.0, 1, 0, master_seed=0)


def test_overlap_histogram_is_distribution():
    lattice = Lattice2D(6, 6)
    spec = WavepacketSpec(k0=(0.0, 0.0), sigma_p=(0.3, 0.3), x0=(3, 3))
    centers, weights = overlap_histogram(lattice, 2.0, spec, 4, 10, master_seed=5)

    assert 10 == len(centers) == len(weights)
    assert 1.0 == pytest.approx(weights.sum())


def test_overlap_histogram_low_momentum_sits_low():
    lattice = Lattice2D(8, 8)
    low = WavepacketSpec(k0=(0.0, 0.0), sigma_p=(0.3, 0.3), x0=(4, 4))
    high = WavepacketSpec(
        k0=(0.75 * math.pi, 0.75 * math.pi), sigma_p=(0.3, 0.3), x0=(4, 4)
    )
    centers, low_weights = overlap_histogram(lattice, 1.0, low, 3, 10, master_seed=0)
    _, high_weights = overlap_histogram(lattice, 1.0, high, 3, 10, master_seed=0)

    assert np.dot(centers, low_weights) < np.dot(centers, high_weights)


def test_ipr_timeseries_starts_at_initial_ipr():
    lattice = Lattice2D(5, 5)
    spec = WavepacketSpec(k0=(0.0, 0.0), sigma_p=(0.5, 0.5), x0=(2, 2))
    disorder = DisorderRealization.from_master(0, 0, 6.0, lattice.num_sites)
    curves = ipr_timeseries(lattice, disorder, spec, [0.0, 1.0, 5.0])

    assert (3,) == curves.shape
    assert np.all((curves > 0) & (curves <= 1))


def test_ipr_timeseries_ensemble_shape_and_offset():
    lattice = Lattice2D(4, 4)
    spec = WavepacketSpec(k0=(0.0, 0.0), sigma_p=(0.5, 0.5))
    t_grid = [0.0, 1.0, 2.0]
    curves = ipr_timeseries_ensemble(lattice, 5.0, spec, t_grid, 3, master_seed=2)
    shifted = ipr_timeseries_ensemble(
        lattice, 5.0, spec, t_grid, 2, master_seed=2, stream_offset=1
    )

    assert (3, 3) == curves.shape
    assert np.allclose(curves[0, 0], curves[:, 0])
    assert np.array_equal(curves[1:], shifted)


def test_select_representative_disorder():
    lattice = Lattice2D(4, 4)
    spec = WavepacketSpec(k0=(0.0, 0.0), sigma_p=(0.5, 0.5))
    disorder, distance = select_representative_disorder(
        lattice, 5.0, spec, [0.0, 1.0, 2.0], 6, master_seed=9
    )
    again, _ = select_representative_disorder(
        lattice, 5.0, spec, [0.0, 1.0, 2.0], 6, master_seed=9, workers=3
    )

    assert distance >= 0
    assert np.array_equal(disorder.values, again.values)

    _, zero = select_representative_disorder(
        lattice, 5.0, spec, [0.0, 1.0], 1, master_seed=9
    )
    assert 0.0 == zero


def test_scan_momentum_prefers_band_centre():
    lattice = Lattice2D(8, 8)
    candidates = [(0.0, 0.0), (math.pi / 2, math.pi / 2)]
    best, weights = scan_momentum(lattice, 1.0, (0.3, 0.3), candidates, 2, master_seed=0)

    assert candidates[1] == best
    assert weights[1] > weights[0]


@pytest.mark.slow
def test_mobility_edge():
    lattice = Lattice2D(20, 20)
    t_grid = [0.0, 250.0]
    medians = {}
    for label, k0 in (("low", (0.0, 0.0)), ("high", (0.75 * math.pi, 0.75 * math.pi))):
        spec = WavepacketSpec(k0=k0, sigma_p=(0.1, 0.1), x0=(10, 10))
        curves = ipr_timeseries_ensemble(
            lattice, 3.0, spec, t_grid, 100, master_seed=0, workers=4
        )
        medians[label] = np.median(curves, axis=0)

    assert medians["low"][1] >= 0.5 * medians["low"][0]
    assert medians["high"][1] <= 5 / lattice.num_sites


@pytest.mark.parametrize("n_realizations", [0, -1])
def test_scan_momentum__negative(n_realizations: int):
    with pytest.raises(InvalidInput):
        scan_momentum(
            Lattice2D(4, 4), 1.0, (0.3, 0.3), [(0.0, 0.0)], n_realizations, master_seed=0
        )
