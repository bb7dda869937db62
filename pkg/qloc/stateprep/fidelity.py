from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from qloc.anderson import SingleParticleState
from qloc.circuit import QuantumStateFull, QuantumStateSector, ShotSet, sample
from qloc.exceptions import InvalidInput


def classical_fidelity(empirical: np.ndarray, ideal: SingleParticleState) -> float:
    """Bhattacharyya overlap Σ_n √(p_n |⟨e_n|ψ⟩|²).

    ``empirical`` holds the frequency of each one-hot string among all
    shots, so shots outside the one-excitation sector lower the result.
    """
    empirical = np.asarray(empirical, dtype=float)
    if empirical.shape != (ideal.num_sites,):
        raise InvalidInput(
            f"Expected {ideal.num_sites} one-hot frequencies, got shape {empirical.shape}."
        )
    if np.any(empirical < 0) or empirical.sum() > 1 + 1e-12:
        raise InvalidInput("One-hot frequencies must be nonnegative and sum to at most 1.")
    return math.fsum(np.sqrt(empirical * ideal.probabilities()))


@dataclass
class IdealReference:
    """Shot-noise-only fidelity and IPR of a noiselessly sampled state."""

    fidelity: float
    ipr: float
    shots: ShotSet


def ideal_reference(
    state: SingleParticleState | QuantumStateSector | QuantumStateFull,
    n_shots: int,
    seed: int,
    *,
    index: int = 0,
    ideal: SingleParticleState | None = None,
) -> IdealReference:
    """Sample ``state`` without noise and score it against ``ideal``.

    ``ideal`` defaults to ``state`` itself when it is a single-particle state.
    """
    if ideal is None:
        if not isinstance(state, SingleParticleState):
            raise InvalidInput("An ideal single-particle state is required.")
        ideal = state
    shots = sample(state, n_shots, seed, index=index)
    distribution = shots.one_hot_distribution()
    return IdealReference(
        fidelity=classical_fidelity(distribution, ideal),
        ipr=float(np.sum(distribution**2)),
        shots=shots,
    )
