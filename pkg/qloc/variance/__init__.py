"""Energy variance of single-particle wavepackets.

The closed form expands the dispersion to second order around ``k0`` and
treats the on-site disorder as uncorrelated uniform noise. For W_i drawn
from [−W/2, W/2] the per-site variance is W²/12; the W²/3 coefficient often
quoted for this expression belongs to W_i ∈ [−W, W]. :func:`empirical_variance`
is the brute-force oracle it is checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from qloc import logger
from qloc.anderson import (
    DisorderRealization,
    Lattice,
    WavepacketSpec,
    build_hamiltonian,
    build_wavepacket,
)
from qloc.exceptions import InvalidInput
from qloc.utils.parallel import ordered_map

core_log = logger.Core.logger()

# Smallest accepted (π ± k0)²/(2σ_p²) before a prediction is flagged
EDGE_MARGIN: float = 4.0


@dataclass(frozen=True)
class GaussianMoments:
    sigma_tilde: float
    M0: float
    M2: float


@dataclass(frozen=True)
class VariancePrediction:
    kinetic_term: float
    disorder_term: float
    total: float
    dimensions: int
    valid: bool = True

    def dump(self) -> dict:
        return {
            "kinetic_term": self.kinetic_term,
            "disorder_term": self.disorder_term,
            "total": self.total,
            "dimensions": self.dimensions,
            "valid": self.valid,
        }


@dataclass(frozen=True)
class EmpiricalVariance:
    mean: float
    stderr: float
    values: tuple[float, ...]


def disorder_variance(W: float) -> float:
    """Variance of one on-site potential drawn uniformly from [−W/2, W/2]."""
    return W**2 / 12


def moment_window(sigma_tilde: float) -> int:
    return math.ceil(12 * sigma_tilde)


def gaussian_moment(n: int, sigma_tilde: float) -> float:
    """Return Σ_{l=−L..L} lⁿ e^{−l²/(2σ̃²)} with L = ceil(12σ̃)."""
    if sigma_tilde <= 0:
        raise InvalidInput(f"sigma_tilde must be positive, got {sigma_tilde!r}.")
    if n < 0:
        raise InvalidInput(f"Moment order must be nonnegative, got {n}.")
    if n % 2 == 1:
        return 0.0

    window = moment_window(sigma_tilde)
    # Summing from the tails inwards keeps the small terms from being lost
    l = np.abs(np.arange(-window, window + 1))
    l = l[np.argsort(-l, kind="stable")].astype(float)
    terms = l**n * np.exp(-(l**2) / (2 * sigma_tilde**2))
    return math.fsum(terms)


def gaussian_moments(sigma_tilde: float) -> GaussianMoments:
    return GaussianMoments(
        sigma_tilde=sigma_tilde,
        M0=gaussian_moment(0, sigma_tilde),
        M2=gaussian_moment(2, sigma_tilde),
    )


def _is_away_from_zone_edge(spec: WavepacketSpec) -> bool:
    for k, sigma in zip(spec.k0, spec.sigma_p):
        margin = min((np.pi - k) ** 2, (np.pi + k) ** 2) / (2 * sigma**2)
        if margin < EDGE_MARGIN:
            return False
    return True


def predict_variance_single_particle(
    lattice: Lattice, spec: WavepacketSpec, W: float
) -> VariancePrediction:
    """Closed-form (ΔE)² of one particle in a Gaussian wavepacket.

    On an ``L_1 × … × L_D`` lattice the kinetic part is
    Σ_d (16π²/L_d²)(M2/M0) sin²(k0_d), which equals
    (16π²/N^{2/D})(M2/M0) Σ_d sin²(k0_d) on a hypercube. The disorder part
    is ⟨W_i²⟩(1 − Σc⁴/(Σc²)²) over the position-space magnitudes, with
    ⟨W_i²⟩ = W²/12.
    """
    if len(spec.k0) != len(lattice.dims):
        raise InvalidInput("Wavepacket and lattice dimensions differ.")

    kinetic: float = 0.0
    for k, sigma_tilde, length in zip(spec.k0, spec.sigma_tilde(lattice), lattice.dims):
        moments = gaussian_moments(sigma_tilde)
        kinetic += 16 * np.pi**2 / length**2 * (moments.M2 / moments.M0) * np.sin(k) ** 2

    magnitudes = np.abs(build_wavepacket(lattice, spec).amplitudes)
    ratio = np.sum(magnitudes**4) / np.sum(magnitudes**2) ** 2
    disorder = disorder_variance(W) * (1 - ratio)

    valid: bool = _is_away_from_zone_edge(spec)
    if not valid:
        core_log.warning(
            None,
            f"Wavepacket k0={spec.k0}, sigma_p={spec.sigma_p} reaches the zone edge; "
            "the variance prediction is outside its validity range.",
        )
    if any(abs(np.sin(k)) < 1e-12 for k in spec.k0) and W == 0:
        core_log.debug(
            None, "Leading kinetic term vanishes at k0 ∈ {0, π}; next order is not included."
        )

    kinetic = float(kinetic)
    disorder = float(max(disorder, 0.0))
    return VariancePrediction(
        kinetic_term=kinetic,
        disorder_term=disorder,
        total=kinetic + disorder,
        dimensions=len(lattice.dims),
        valid=valid,
    )


def _energy_variance(H: np.ndarray, amplitudes: np.ndarray) -> float:
    applied = H @ amplitudes
    mean = float(np.vdot(amplitudes, applied).real)
    square = float(np.vdot(applied, applied).real)
    return square - mean**2


def empirical_variance(
    lattice: Lattice,
    spec: WavepacketSpec,
    W: float,
    n_realizations: int,
    master_seed: int,
    *,
    workers: int = 1,
) -> EmpiricalVariance:
    """Average ⟨H²⟩ − ⟨H⟩² of the untruncated wavepacket over disorder."""
    if n_realizations < 2:
        raise InvalidInput("At least two realizations are required for a standard error.")
    if spec.trunc_threshold:
        spec = WavepacketSpec(k0=spec.k0, sigma_p=spec.sigma_p, x0=spec.x0)
    amplitudes = build_wavepacket(lattice, spec).amplitudes

    def realization(index: int) -> float:
        disorder = DisorderRealization.from_master(
            master_seed, index, W, lattice.num_sites
        )
        return _energy_variance(build_hamiltonian(lattice, disorder), amplitudes)

    values = np.array(ordered_map(realization, range(n_realizations), workers))
    return EmpiricalVariance(
        mean=float(values.mean()),
        stderr=float(values.std(ddof=1) / np.sqrt(n_realizations)),
        values=tuple(float(v) for v in values),
    )


def quantized_wavepacket_variance(lattice: Lattice, spec: WavepacketSpec) -> float:
    """Clean-lattice (ΔE)² of the quantized-momentum packet, summed over the grid."""
    weights = np.ones(1)
    energies = np.zeros(1)
    for d, grid in enumerate(lattice.momentum_grids()):
        w = np.exp(-((grid - spec.k0[d]) ** 2) / (2 * spec.sigma_p[d] ** 2))
        weights = np.outer(weights, w).ravel()
        energies = np.add.outer(energies, -2 * np.cos(grid)).ravel()
    weights /= weights.sum()
    mean = np.sum(weights * energies)
    return float(np.sum(weights * (energies - mean) ** 2))


__all__ = (
    "EmpiricalVariance",
    "GaussianMoments",
    "VariancePrediction",
    "empirical_variance",
    "gaussian_moment",
    "gaussian_moments",
    "disorder_variance",
    "moment_window",
    "predict_variance_single_particle",
    "quantized_wavepacket_variance",
)
