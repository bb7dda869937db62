"""Maximum-likelihood reconstruction of one-excitation distributions.

Every measured string ``b`` is modelled as a one-hot string ``e_i`` drawn
with probability ``p_i`` and then corrupted by IID flips:

    P(b) = Σ_i p_i ε^{d(b, e_i)} (1 − ε)^{N − d(b, e_i)}

The log-likelihood Σ_j c_j log P(b_j) is maximised by expectation
maximisation over ``(p, ε)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.special

from qloc import _tracing, logger
from qloc.circuit import ShotSet
from qloc.exceptions import ConvergenceError, InvalidInput

_trace = _tracing.register("qloc_mitigation")

core_log = logger.Core.logger()

EPSILON_FLOOR: float = 1e-9
EPSILON_CEILING: float = 0.5 - 1e-9
DEFAULT_TOLERANCE: float = 1e-10
DEFAULT_MAX_ITER: int = 10_000
# Share of the one-hot frequencies in the initial p
INIT_MIXING: float = 0.9


@dataclass
class MLEstimate:
    p_hat: np.ndarray = field(repr=False)
    epsilon_hat: float
    log_likelihood: float
    iterations: int
    converged: bool
    trace: list[float] = field(default_factory=list, repr=False)

    def dump(self) -> dict:
        return {
            "p_hat": self.p_hat.tolist(),
            "epsilon_hat": self.epsilon_hat,
            "loglik": self.log_likelihood,
            "iterations": self.iterations,
            "converged": self.converged,
        }


class _Data:
    """Distinct strings, their counts and their distances to every e_i."""

    def __init__(self, shots: ShotSet):
        self.N = shots.num_qubits
        self.counts = shots.counts().astype(float)
        self.total = float(self.counts.sum())
        bits = shots.bit_matrix().astype(float)
        weights = bits.sum(axis=1)
        # d(b_j, e_i) = |b_j| + 1 − 2·b_ji
        self.distances = weights[:, None] + 1 - 2 * bits
        self.weights = weights

    def log_components(self, p: np.ndarray, epsilon: float) -> np.ndarray:
        with np.errstate(divide="ignore"):
            log_p = np.log(p)
        return (
            log_p[None, :]
            + self.distances * math.log(epsilon)
            + (self.N - self.distances) * math.log1p(-epsilon)
        )

    def log_likelihood(self, log_mixture: np.ndarray) -> float:
        return math.fsum(self.counts * log_mixture)


def initial_guess(shots: ShotSet) -> tuple[np.ndarray, float]:
    """One-hot frequencies mixed 9:1 with uniform, and ε from the mean weight excess."""
    N = shots.num_qubits
    one_hot = shots.one_hot_distribution()
    uniform = np.full(N, 1 / N)
    if one_hot.sum() > 0:
        p0 = INIT_MIXING * one_hot / one_hot.sum() + (1 - INIT_MIXING) * uniform
    else:
        p0 = uniform
    deviation = np.abs(shots.hamming_weights() - 1) @ shots.counts() / shots.total
    epsilon0 = float(np.clip(deviation / N, EPSILON_FLOOR, EPSILON_CEILING))
    return p0, epsilon0


def log_likelihood(shots: ShotSet, p: np.ndarray, epsilon: float) -> float:
    data = _Data(shots)
    epsilon = float(np.clip(epsilon, EPSILON_FLOOR, EPSILON_CEILING))
    log_mixture = scipy.special.logsumexp(data.log_components(np.asarray(p), epsilon), axis=1)
    return data.log_likelihood(log_mixture)


def mle_fit(
    shots: ShotSet,
    init: tuple[np.ndarray, float] | None = None,
    tol: float = DEFAULT_TOLERANCE,
    max_iter: int = DEFAULT_MAX_ITER,
) -> MLEstimate:
    """Fit ``(p, ε)`` by expectation maximisation.

    Stops when one iteration gains less than ``tol`` in log-likelihood or
    after ``max_iter`` iterations. The likelihood may never decrease; a
    drop beyond rounding raises :class:`ConvergenceError`.
    """
    if shots.total == 0:
        raise InvalidInput("Cannot fit an empty shot set.")

    data = _Data(shots)
    if init is None:
        p, epsilon = initial_guess(shots)
    else:
        p = np.asarray(init[0], dtype=float)
        if p.shape != (data.N,) or np.any(p < 0) or p.sum() <= 0:
            raise InvalidInput("Initial p must be a nonnegative vector over the one-hot strings.")
        p = p / p.sum()
        epsilon = float(np.clip(init[1], EPSILON_FLOOR, EPSILON_CEILING))

    log_components = data.log_components(p, epsilon)
    log_mixture = scipy.special.logsumexp(log_components, axis=1)
    current = data.log_likelihood(log_mixture)
    trace: list[float] = [current]
    converged: bool = False

    iteration: int = 0
    while iteration < max_iter:
        iteration += 1
        responsibilities = np.exp(log_components - log_mixture[:, None])
        weighted = data.counts[:, None] * responsibilities

        p = weighted.sum(axis=0) / data.total
        p /= p.sum()
        epsilon = float(np.sum(weighted * data.distances) / (data.N * data.total))
        epsilon = min(max(epsilon, EPSILON_FLOOR), EPSILON_CEILING)

        log_components = data.log_components(p, epsilon)
        log_mixture = scipy.special.logsumexp(log_components, axis=1)
        updated = data.log_likelihood(log_mixture)
        trace.append(updated)
        _trace(f"iteration {iteration}: L={updated!r} ε={epsilon!r}")

        gain = updated - current
        if gain < -1e-8 * max(1.0, abs(current)):
            raise ConvergenceError(
                f"Log-likelihood decreased by {-gain:.3e} at iteration {iteration}."
            )
        current = updated
        if gain < tol:
            converged = True
            break

    if not converged:
        core_log.warning(
            None,
            f"EM stopped after {iteration} iterations without reaching tolerance {tol}.",
        )
    return MLEstimate(
        p_hat=p,
        epsilon_hat=epsilon,
        log_likelihood=current,
        iterations=iteration,
        converged=converged,
        trace=trace,
    )
