from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from qloc import rng
from qloc.anderson import SingleParticleState
from qloc.circuit import QuantumStateFull, QuantumStateSector, ShotSet, sample
from qloc.exceptions import InvalidInput


@dataclass(frozen=True)
class BitFlipModel:
    """Independent readout flips with probability ``epsilon`` on every qubit."""

    epsilon: float

    def __post_init__(self):
        if not 0 <= self.epsilon < 0.5:
            raise InvalidInput(f"Flip probability must lie in [0, 1/2), got {self.epsilon}.")


def corrupt(
    source: ShotSet | SingleParticleState | QuantumStateSector | QuantumStateFull,
    model: BitFlipModel,
    seed: int,
    *,
    n_shots: int | None = None,
    index: int = 0,
) -> ShotSet:
    """Flip every measured bit independently with probability ε.

    A state is sampled first (``n_shots`` shots from the ``shots`` stream);
    the flips come from the ``noise`` stream, so the same shots are drawn
    for every ε.
    """
    if isinstance(source, ShotSet):
        shots = source
    else:
        if n_shots is None:
            raise InvalidInput("Corrupting a state needs the number of shots.")
        shots = sample(source, n_shots, seed, index=index)

    if model.epsilon == 0 or shots.total == 0:
        return shots

    generator = rng.generator(seed, "noise", index)
    measured = np.repeat(shots.bitstrings(), shots.counts())
    flips = generator.random((len(measured), shots.num_qubits)) < model.epsilon
    masks = flips.astype(np.int64) @ (np.int64(1) << np.arange(shots.num_qubits, dtype=np.int64))
    noisy, counts = np.unique(measured ^ masks, return_counts=True)
    return ShotSet.from_arrays(shots.num_qubits, noisy, counts)


def hamming_distance(a: str | int, b: str | int) -> int:
    """Number of positions where two bitstrings differ."""
    if isinstance(a, str) and isinstance(b, str):
        if len(a) != len(b):
            raise InvalidInput(f"Bitstrings {a!r} and {b!r} have different lengths.")
        return sum(x != y for x, y in zip(a, b))
    if isinstance(a, int) and isinstance(b, int):
        return (a ^ b).bit_count()
    raise InvalidInput("Compare two strings or two integers.")


def postselect(shots: ShotSet, n_e: int = 1) -> tuple[ShotSet, float]:
    """Keep the shots with exactly ``n_e`` ones; return them and the survival rate."""
    kept = {bits: count for bits, count in shots.records.items() if bits.bit_count() == n_e}
    survivors = ShotSet(num_qubits=shots.num_qubits, records=kept)
    rate = survivors.total / shots.total if shots.total else 0.0
    return survivors, rate


def survival_rate_exact(N: int, epsilon: float, n_e: int = 1) -> float:
    """Probability that IID flips leave the excitation number of a basis state unchanged.

    Weight is kept when ``j`` ones flip down and ``j`` zeros flip up.
    """
    if not 0 <= n_e <= N:
        raise InvalidInput(f"Cannot have {n_e} excitations on {N} qubits.")
    return math.fsum(
        math.comb(n_e, j)
        * math.comb(N - n_e, j)
        * epsilon ** (2 * j)
        * (1 - epsilon) ** (N - 2 * j)
        for j in range(min(n_e, N - n_e) + 1)
    )


def effective_epsilon(gate_count: int, N: int, gate_error: float) -> float:
    """Readout flip probability accumulated from two-qubit gate errors.

    Each two-qubit gate flips both of its qubits with probability
    ``gate_error``; a qubit takes part in ``2·gate_count/N`` gates on average.
    """
    if not 0 <= gate_error < 0.5:
        raise InvalidInput(f"Gate error must lie in [0, 1/2), got {gate_error}.")
    if N < 1 or gate_count < 0:
        raise InvalidInput("Gate count and qubit count must be nonnegative.")
    return (1 - (1 - 2 * gate_error) ** (2 * gate_count / N)) / 2


def synthetic_shots(p: np.ndarray, n_shots: int, seed: int, *, index: int = 0) -> ShotSet:
    """Noiseless one-hot shots of a known site distribution ``p``."""
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or len(p) == 0 or np.any(p < 0) or abs(p.sum() - 1) > 1e-9:
        raise InvalidInput("Site distribution must be a nonnegative vector summing to 1.")
    if n_shots < 0:
        raise InvalidInput("Number of shots cannot be negative.")
    counts = rng.generator(seed, "synthetic", index).multinomial(n_shots, p / p.sum())
    one_hot = np.int64(1) << np.arange(len(p), dtype=np.int64)
    return ShotSet.from_arrays(len(p), one_hot, counts)
