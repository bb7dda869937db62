from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from qloc import logger, rng
from qloc.anderson.lattice import DisorderRealization, Lattice, build_hamiltonian
from qloc.anderson.spectrum import diagonalize, exact_evolve, spectrum_overlaps
from qloc.anderson.states import WavepacketSpec, build_wavepacket, ipr
from qloc.exceptions import InvalidInput
from qloc.utils.parallel import ordered_map

core_log = logger.Core.logger()


@dataclass(frozen=True, eq=False)
class BinnedCurve:
    """Mean and standard error per energy bin; empty bins are left out."""

    centers: np.ndarray = field(repr=False)
    means: np.ndarray = field(repr=False)
    stderrs: np.ndarray = field(repr=False)
    counts: np.ndarray = field(repr=False)

    def rows(self) -> list[dict]:
        return [
            {"energy": float(c), "mean": float(m), "stderr": float(s), "count": int(n)}
            for c, m, s, n in zip(self.centers, self.means, self.stderrs, self.counts)
        ]


def _bin_index(rescaled: np.ndarray, bins: int) -> np.ndarray:
    return np.minimum((rescaled * bins).astype(int), bins - 1)


def ipr_vs_energy(
    lattice: Lattice,
    W: float,
    n_realizations: int,
    bins: int,
    master_seed: int,
    *,
    workers: int = 1,
) -> BinnedCurve:
    """Bin eigenstate IPRs over rescaled energy, averaged over disorder.

    Realization ``r`` uses the disorder seed derived from
    ``(master_seed, "disorder", r)``. At ``W = 0`` the eigenvectors of
    degenerate levels are not unique and their IPRs depend on the solver.
    """
    if n_realizations < 1:
        raise InvalidInput("At least one realization is required.")
    if bins < 1:
        raise InvalidInput("At least one bin is required.")
    if W == 0:
        core_log.warning(
            None, "IPR of degenerate clean-lattice eigenvectors is basis dependent."
        )

    def realization(index: int) -> tuple[np.ndarray, np.ndarray]:
        disorder = DisorderRealization.from_master(
            master_seed, index, W, lattice.num_sites
        )
        spectrum = diagonalize(build_hamiltonian(lattice, disorder))
        return _bin_index(spectrum.rescaled_energies, bins), spectrum.eigenvector_iprs()

    results = ordered_map(realization, range(n_realizations), workers)
    indices = np.concatenate([r[0] for r in results])
    values = np.concatenate([r[1] for r in results])

    counts = np.bincount(indices, minlength=bins)
    sums = np.bincount(indices, weights=values, minlength=bins)
    present = counts > 0
    means = np.zeros(bins)
    means[present] = sums[present] / counts[present]
    squares = np.bincount(indices, weights=(values - means[indices]) ** 2, minlength=bins)

    stderrs = np.zeros(bins)
    several = counts > 1
    stderrs[several] = np.sqrt(squares[several] / (counts[several] - 1) / counts[several])

    centers = (np.arange(bins) + 0.5) / bins
    return BinnedCurve(
        centers=centers[present],
        means=means[present],
        stderrs=stderrs[present],
        counts=counts[present],
    )


def overlap_histogram(
    lattice: Lattice,
    W: float,
    spec: WavepacketSpec,
    n_realizations: int,
    bins: int,
    master_seed: int,
    *,
    workers: int = 1,
) -> tuple[np.ndarray, np.ndarray]:
    """Disorder-averaged wavepacket weight per rescaled-energy bin."""
    if n_realizations < 1:
        raise InvalidInput("At least one realization is required.")
    state = build_wavepacket(lattice, spec)

    def realization(index: int) -> np.ndarray:
        disorder = DisorderRealization.from_master(
            master_seed, index, W, lattice.num_sites
        )
        energies, weights = spectrum_overlaps(build_hamiltonian(lattice, disorder), state)
        return np.bincount(_bin_index(energies, bins), weights=weights, minlength=bins)

    histograms = ordered_map(realization, range(n_realizations), workers)
    centers = (np.arange(bins) + 0.5) / bins
    return centers, np.sum(histograms, axis=0) / n_realizations


def ipr_timeseries(
    lattice: Lattice,
    disorder: DisorderRealization,
    spec: WavepacketSpec,
    t_grid: Sequence[float],
) -> np.ndarray:
    """IPR of the exactly evolved wavepacket at every time of ``t_grid``."""
    spectrum = diagonalize(build_hamiltonian(lattice, disorder))
    state = build_wavepacket(lattice, spec)
    return np.array([ipr(exact_evolve(spectrum, state, t)) for t in t_grid])


def ipr_timeseries_ensemble(
    lattice: Lattice,
    W: float,
    spec: WavepacketSpec,
    t_grid: Sequence[float],
    n_realizations: int,
    master_seed: int,
    *,
    workers: int = 1,
    stream_offset: int = 0,
) -> np.ndarray:
    """Return a ``(realization, time)`` matrix of IPR curves."""
    if n_realizations < 1:
        raise InvalidInput("At least one realization is required.")

    def realization(index: int) -> np.ndarray:
        disorder = DisorderRealization.from_master(
            master_seed, stream_offset + index, W, lattice.num_sites
        )
        return ipr_timeseries(lattice, disorder, spec, t_grid)

    return np.array(ordered_map(realization, range(n_realizations), workers))


def select_representative_disorder(
    lattice: Lattice,
    W: float,
    spec: WavepacketSpec,
    t_grid: Sequence[float],
    n_candidates: int,
    master_seed: int,
    *,
    workers: int = 1,
) -> tuple[DisorderRealization, float]:
    """Pick the candidate whose IPR(t) curve is closest to the candidate mean.

    Returns the realization and its root-mean-square distance to the mean
    curve.
    """
    if n_candidates < 1:
        raise InvalidInput("At least one candidate is required.")
    candidates = [
        DisorderRealization.generate(
            rng.derive_seed(master_seed, "candidates", index), W, lattice.num_sites
        )
        for index in range(n_candidates)
    ]
    curves = np.array(
        ordered_map(
            lambda disorder: ipr_timeseries(lattice, disorder, spec, t_grid),
            candidates,
            workers,
        )
    )
    distances = np.sqrt(np.mean((curves - curves.mean(axis=0)) ** 2, axis=1))
    best = int(np.argmin(distances))
    core_log.debug(
        None,
        f"Representative disorder is candidate {best} of {n_candidates} "
        f"(rms distance {distances[best]:.4g}).",
    )
    return candidates[best], float(distances[best])


def scan_momentum(
    lattice: Lattice,
    W: float,
    sigma_p: tuple[float, ...],
    k_candidates: Sequence[tuple[float, ...]],
    n_realizations: int,
    master_seed: int,
    *,
    window: tuple[float, float] = (0.25, 0.75),
    workers: int = 1,
) -> tuple[tuple[float, ...], np.ndarray]:
    """Find the ``k0`` whose wavepacket puts most weight inside an energy window.

    Returns the best candidate and the disorder-averaged in-window weight of
    every candidate.
    """
    if not k_candidates:
        raise InvalidInput("No momentum candidates given.")
    if n_realizations < 1:
        raise InvalidInput("At least one realization is required.")
    low, high = window
    states = [
        build_wavepacket(lattice, WavepacketSpec(k0=tuple(k0), sigma_p=sigma_p))
        for k0 in k_candidates
    ]

    def realization(index: int) -> np.ndarray:
        disorder = DisorderRealization.from_master(
            master_seed, index, W, lattice.num_sites
        )
        spectrum = diagonalize(build_hamiltonian(lattice, disorder))
        inside = (spectrum.rescaled_energies >= low) & (spectrum.rescaled_energies <= high)
        return np.array(
            [spectrum_overlaps(spectrum, state)[1][inside].sum() for state in states]
        )

    weights = np.mean(ordered_map(realization, range(n_realizations), workers), axis=0)
    best = int(np.argmax(weights))
    return tuple(k_candidates[best]), weights
