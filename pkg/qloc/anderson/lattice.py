from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from qloc import rng
from qloc.exceptions import InvalidInput


class _PeriodicLattice:
    """Shared geometry of :class:`Lattice2D` and :class:`Chain`."""

    @property
    def dims(self) -> tuple[int, ...]:
        raise NotImplementedError("This property has to be subclassed.")

    @property
    def num_sites(self) -> int:
        return math.prod(self.dims)

    @property
    def dimension(self) -> int:
        return len(self.dims)

    def site(self, *coordinate: int) -> int:
        """Return the site index of a coordinate, wrapping periodically."""
        if len(coordinate) != self.dimension:
            raise InvalidInput(
                f"Expected {self.dimension} coordinates, got {len(coordinate)}."
            )
        index: int = 0
        stride: int = 1
        for value, length in zip(coordinate, self.dims):
            index += (value % length) * stride
            stride *= length
        return index

    def coordinates(self) -> np.ndarray:
        """Return an ``(N, D)`` integer array of site coordinates."""
        sites = np.arange(self.num_sites)
        columns: list[np.ndarray] = []
        stride: int = 1
        for length in self.dims:
            columns.append((sites // stride) % length)
            stride *= length
        return np.stack(columns, axis=1)

    def bonds(self) -> list[tuple[int, int, int]]:
        """Return each nearest-neighbour bond once as ``(i, j, direction)``.

        ``j`` is the neighbour of ``i`` in the positive ``direction``.
        """
        bonds: list[tuple[int, int, int]] = []
        for direction in range(self.dimension):
            for i, coordinate in enumerate(self.coordinates()):
                shifted = [int(c) for c in coordinate]
                shifted[direction] += 1
                bonds.append((i, self.site(*shifted), direction))
        return bonds

    def momentum_grids(self) -> list[np.ndarray]:
        """Return the quantized momenta 2πm/L per direction, mapped into (−π, π]."""
        grids: list[np.ndarray] = []
        for length in self.dims:
            k = 2 * np.pi * np.arange(length) / length
            k[k > np.pi + 1e-12] -= 2 * np.pi
            grids.append(k)
        return grids

    def is_on_grid(self, k: tuple[float, ...]) -> bool:
        if len(k) != self.dimension:
            return False
        for value, length in zip(k, self.dims):
            if not -np.pi < value <= np.pi + 1e-12:
                return False
            m = value * length / (2 * np.pi)
            if abs(m - round(m)) > 1e-9:
                return False
        return True


@dataclass(frozen=True)
class Lattice2D(_PeriodicLattice):
    """Periodic ``Lx × Ly`` square lattice."""

    Lx: int
    Ly: int

    def __post_init__(self):
        if self.Lx < 3 or self.Ly < 3:
            raise InvalidInput(
                f"Lattice {self.Lx}×{self.Ly} is too small, both sides must be at least 3."
            )

    @property
    def dims(self) -> tuple[int, ...]:
        return (self.Lx, self.Ly)

    def __str__(self) -> str:
        return f"{self.Lx}x{self.Ly}"


@dataclass(frozen=True)
class Chain(_PeriodicLattice):
    """Periodic chain of ``L`` sites."""

    L: int

    def __post_init__(self):
        if self.L < 3:
            raise InvalidInput(f"Chain of {self.L} sites is too small, needs at least 3.")

    @property
    def dims(self) -> tuple[int, ...]:
        return (self.L,)

    def __str__(self) -> str:
        return f"{self.L}"


Lattice = Lattice2D | Chain


@dataclass(frozen=True, eq=False)
class DisorderRealization:
    """Uniform on-site potential ``W_i ∈ [−W/2, W/2)``."""

    strength: float
    values: np.ndarray = field(repr=False)
    seed: int

    def __post_init__(self):
        if self.strength < 0:
            raise InvalidInput(f"Disorder strength must be nonnegative, got {self.strength}.")
        if np.any(np.abs(self.values) > self.strength / 2 + 1e-15):
            raise InvalidInput("Disorder values exceed the ±W/2 window.")

    @property
    def num_sites(self) -> int:
        return len(self.values)

    @staticmethod
    def generate(seed: int, strength: float, num_sites: int) -> DisorderRealization:
        """Draw the potential of ``num_sites`` sites; the same arguments give the same values."""
        generator = rng.from_seed(seed)
        values = strength * (generator.random(num_sites) - 0.5)
        return DisorderRealization(strength=strength, values=values, seed=seed)

    @staticmethod
    def from_master(
        master_seed: int, index: int, strength: float, num_sites: int
    ) -> DisorderRealization:
        """Draw realization ``index`` of an ensemble keyed by ``master_seed``."""
        seed: int = rng.derive_seed(master_seed, "disorder", index)
        return DisorderRealization.generate(seed, strength, num_sites)

    @staticmethod
    def clean(num_sites: int) -> DisorderRealization:
        return DisorderRealization(strength=0.0, values=np.zeros(num_sites), seed=0)

    def dump(self) -> dict:
        return {"W": self.strength, "seed": self.seed, "values": self.values.tolist()}


def build_hamiltonian(lattice: Lattice, disorder: DisorderRealization) -> np.ndarray:
    """Return the dense tight-binding Hamiltonian with hopping −1 and potential W_i."""
    N: int = lattice.num_sites
    if disorder.num_sites != N:
        raise InvalidInput(
            f"Disorder has {disorder.num_sites} values, lattice {lattice} has {N} sites."
        )

    H = np.zeros((N, N))
    for i, j, _ in lattice.bonds():
        H[i, j] = -1.0
        H[j, i] = -1.0
    H[np.diag_indices(N)] = disorder.values
    return H


def dispersion(k: tuple[float, ...] | float) -> float:
    """Return the clean-lattice band energy −2 Σ_d cos k_d."""
    components = np.atleast_1d(np.asarray(k, dtype=float))
    return float(-2 * np.sum(np.cos(components)))
