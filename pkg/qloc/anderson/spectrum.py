from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from qloc.anderson.states import SingleParticleState
from qloc.exceptions import InvalidInput


@dataclass(frozen=True, eq=False)
class SpectrumResult:
    """Eigendecomposition of one Hamiltonian with per-realization rescaled energies."""

    hamiltonian: np.ndarray = field(repr=False)
    energies: np.ndarray = field(repr=False)
    eigenvectors: np.ndarray = field(repr=False)
    rescaled_energies: np.ndarray = field(repr=False)

    @property
    def num_sites(self) -> int:
        return len(self.energies)

    def eigenvector_iprs(self) -> np.ndarray:
        return np.sum(np.abs(self.eigenvectors) ** 4, axis=0)


def diagonalize(H: np.ndarray) -> SpectrumResult:
    """Dense eigendecomposition of a real symmetric Hamiltonian."""
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise InvalidInput(f"Hamiltonian must be square, got shape {H.shape}.")

    energies, eigenvectors = scipy.linalg.eigh(H)
    span = energies[-1] - energies[0]
    if span <= 0:
        raise InvalidInput("Hamiltonian has a single eigenvalue, energies cannot be rescaled.")
    rescaled = (energies - energies[0]) / span
    # Pin the endpoints exactly
    rescaled[0] = 0.0
    rescaled[-1] = 1.0
    return SpectrumResult(
        hamiltonian=H,
        energies=energies,
        eigenvectors=eigenvectors,
        rescaled_energies=rescaled,
    )


def _spectrum(H: np.ndarray | SpectrumResult) -> SpectrumResult:
    if isinstance(H, SpectrumResult):
        return H
    return diagonalize(H)


def exact_evolve(
    H: np.ndarray | SpectrumResult, state: SingleParticleState, t: float
) -> SingleParticleState:
    """Return e^{−iHt}|ψ⟩ through the spectral decomposition.

    Passing a :class:`SpectrumResult` reuses an earlier diagonalization.
    """
    spectrum = _spectrum(H)
    if spectrum.num_sites != state.num_sites:
        raise InvalidInput("Hamiltonian and state sizes differ.")
    if t == 0:
        return state

    V = spectrum.eigenvectors
    coefficients = V.conj().T @ state.amplitudes
    evolved = V @ (np.exp(-1j * spectrum.energies * t) * coefficients)
    # Rounding only; the evolution is unitary
    return SingleParticleState.normalized(evolved)


def spectrum_overlaps(
    H: np.ndarray | SpectrumResult, state: SingleParticleState
) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(rescaled energies, |⟨v_k|ψ⟩|²)`` for every eigenstate."""
    spectrum = _spectrum(H)
    if spectrum.num_sites != state.num_sites:
        raise InvalidInput("Hamiltonian and state sizes differ.")
    weights = np.abs(spectrum.eigenvectors.conj().T @ state.amplitudes) ** 2
    return spectrum.rescaled_energies, weights
