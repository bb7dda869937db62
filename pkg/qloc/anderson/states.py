from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from qloc import logger
from qloc.anderson.lattice import Lattice, Lattice2D
from qloc.exceptions import EmptyState, InvalidInput

core_log = logger.Core.logger()

NORM_TOLERANCE: float = 1e-12


@dataclass(frozen=True, eq=False)
class SingleParticleState:
    """Amplitudes c_n of one particle over the lattice sites."""

    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if amplitudes.ndim != 1 or len(amplitudes) == 0:
            raise InvalidInput("State amplitudes must be a nonempty vector.")
        norm = float(np.vdot(amplitudes, amplitudes).real)
        if abs(norm - 1) > NORM_TOLERANCE:
            raise InvalidInput(f"State is not normalized (Σ|c|² = {norm!r}).")
        object.__setattr__(self, "amplitudes", amplitudes)

    @staticmethod
    def normalized(amplitudes: np.ndarray) -> SingleParticleState:
        amplitudes = np.asarray(amplitudes, dtype=complex)
        norm = np.linalg.norm(amplitudes)
        if norm == 0:
            raise EmptyState("Cannot normalize the zero vector.")
        return SingleParticleState(amplitudes / norm)

    @staticmethod
    def one_hot(num_sites: int, site: int) -> SingleParticleState:
        if not 0 <= site < num_sites:
            raise InvalidInput(f"Site {site} is outside 0..{num_sites - 1}.")
        amplitudes = np.zeros(num_sites, dtype=complex)
        amplitudes[site] = 1
        return SingleParticleState(amplitudes)

    @property
    def num_sites(self) -> int:
        return len(self.amplitudes)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def support(self) -> np.ndarray:
        """Return the ascending site indices with nonzero amplitude."""
        return np.flatnonzero(self.amplitudes != 0)


@dataclass(frozen=True)
class WavepacketSpec:
    """Gaussian wavepacket centred at momentum ``k0`` and position ``x0``.

    ``k0`` need not lie on the momentum grid; the superposition always runs
    over the quantized Brillouin zone.
    """

    k0: tuple[float, ...]
    sigma_p: tuple[float, ...]
    x0: tuple[float, ...] = ()
    trunc_threshold: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "k0", tuple(float(k) for k in self.k0))
        object.__setattr__(self, "sigma_p", tuple(float(s) for s in self.sigma_p))
        x0 = tuple(float(x) for x in self.x0) or tuple(0.0 for _ in self.k0)
        object.__setattr__(self, "x0", x0)

        if not len(self.k0) == len(self.sigma_p) == len(self.x0):
            raise InvalidInput("k0, sigma_p and x0 must have the same dimension.")
        for k in self.k0:
            if not -np.pi < k <= np.pi + 1e-12:
                raise InvalidInput(f"Momentum component {k!r} is outside (−π, π].")
        if any(s <= 0 for s in self.sigma_p):
            raise InvalidInput("sigma_p components must be positive.")
        if not 0 <= self.trunc_threshold < 1:
            raise InvalidInput(
                f"Truncation threshold {self.trunc_threshold!r} is outside [0, 1)."
            )

    def sigma_tilde(self, lattice: Lattice) -> tuple[float, ...]:
        """Momentum spread in units of the grid spacing, σ_p·L/(2π)."""
        return tuple(
            s * length / (2 * np.pi) for s, length in zip(self.sigma_p, lattice.dims)
        )

    def dump(self) -> dict:
        return {
            "k0": list(self.k0),
            "sigma_p": list(self.sigma_p),
            "x0": list(self.x0),
            "trunc_threshold": self.trunc_threshold,
        }


def _check_dimension(lattice: Lattice, components: tuple[float, ...], name: str) -> None:
    if len(components) != len(lattice.dims):
        raise InvalidInput(
            f"{name} has {len(components)} components, lattice {lattice} "
            f"has {len(lattice.dims)} dimensions."
        )


def plane_wave(lattice: Lattice, k: tuple[float, ...]) -> SingleParticleState:
    """Return e^{ik·x}/√N for a momentum on the lattice grid."""
    k = tuple(float(c) for c in np.atleast_1d(k))
    _check_dimension(lattice, k, "Momentum")
    if not lattice.is_on_grid(k):
        raise InvalidInput(f"Momentum {k} is not on the 2πm/L grid of {lattice}.")

    phase = lattice.coordinates() @ np.asarray(k)
    return SingleParticleState(np.exp(1j * phase) / np.sqrt(lattice.num_sites))


def build_wavepacket(lattice: Lattice, spec: WavepacketSpec) -> SingleParticleState:
    """Sum Gaussian-weighted plane waves over the Brillouin zone.

    The momentum weight factorizes over directions, so the position
    amplitudes are products of one-dimensional sums.
    """
    _check_dimension(lattice, spec.k0, "k0")

    coordinates = lattice.coordinates()
    amplitudes = np.ones(lattice.num_sites, dtype=complex)
    for d, grid in enumerate(lattice.momentum_grids()):
        weights = np.exp(-((grid - spec.k0[d]) ** 2) / (4 * spec.sigma_p[d] ** 2))
        offsets = coordinates[:, d] - spec.x0[d]
        amplitudes *= np.exp(1j * np.outer(offsets, grid)) @ weights

    state = SingleParticleState.normalized(amplitudes)
    if spec.trunc_threshold == 0:
        return state

    probabilities = state.probabilities()
    if spec.trunc_threshold >= probabilities.max():
        raise EmptyState(
            f"Threshold {spec.trunc_threshold} removes every amplitude "
            f"(largest probability {probabilities.max():.4g})."
        )
    truncated = np.where(probabilities < spec.trunc_threshold, 0, state.amplitudes)
    state = SingleParticleState.normalized(truncated)
    core_log.debug(
        None,
        f"Wavepacket k0={spec.k0} truncated at {spec.trunc_threshold} "
        f"to support {len(state.support())}.",
    )
    return state


def ipr(state: SingleParticleState | np.ndarray) -> float:
    """Inverse participation ratio Σ_n |c_n|⁴."""
    amplitudes = state.amplitudes if isinstance(state, SingleParticleState) else state
    return float(np.sum(np.abs(amplitudes) ** 4))


def probability_density(state: SingleParticleState, lattice: Lattice2D) -> np.ndarray:
    """Return |c_{x,y}|² as an ``(Ly, Lx)`` array, row ``y``, column ``x``."""
    if state.num_sites != lattice.num_sites:
        raise InvalidInput("State and lattice sizes differ.")
    return state.probabilities().reshape(lattice.Ly, lattice.Lx)
