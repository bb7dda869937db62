from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from qloc import logger, rng
from qloc.anderson import SingleParticleState
from qloc.circuit import ShotSet
from qloc.exceptions import EstimatorError, InvalidInput
from qloc.mitigation.mle import MLEstimate, mle_fit
from qloc.mitigation.noise import postselect
from qloc.stateprep import classical_fidelity
from qloc.utils.parallel import ordered_map

core_log = logger.Core.logger()

Estimator = Callable[[ShotSet], float]

ESTIMATORS: tuple[str, ...] = ("ps-ipr", "mle-ipr", "fidelity")
MIN_RESAMPLES: int = 100
# Redraws allowed per resample before the estimator is declared unusable
MAX_REDRAWS: int = 100


def ipr_from_distribution(p: np.ndarray) -> float:
    """Σ p_i² of a measured probability distribution."""
    return float(np.sum(np.asarray(p, dtype=float) ** 2))


def total_variation(p: np.ndarray, q: np.ndarray) -> float:
    p, q = np.asarray(p, dtype=float), np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise InvalidInput(f"Distributions have shapes {p.shape} and {q.shape}.")
    return 0.5 * math.fsum(np.abs(p - q))


def ps_distribution(shots: ShotSet, n_e: int = 1) -> tuple[np.ndarray, float]:
    """Post-selected one-hot distribution and the survival rate."""
    if n_e != 1:
        raise InvalidInput("Only the one-excitation distribution is reconstructed.")
    survivors, rate = postselect(shots, n_e)
    if survivors.total == 0:
        raise EstimatorError("No shot survives post-selection.")
    return survivors.one_hot_distribution(), rate


def ps_ipr(shots: ShotSet) -> float:
    return ipr_from_distribution(ps_distribution(shots)[0])


def mle_ipr(shots: ShotSet, init: tuple[np.ndarray, float] | None = None) -> float:
    return ipr_from_distribution(mle_fit(shots, init=init).p_hat)


def resolve_estimator(
    name: str,
    *,
    ideal: SingleParticleState | None = None,
    fit: MLEstimate | None = None,
) -> Estimator:
    """Return the estimator called ``name``.

    ``fit`` warm-starts every MLE resample; ``ideal`` is the reference
    state of the classical fidelity of post-selected shots.
    """
    if name == "ps-ipr":
        return ps_ipr
    if name == "mle-ipr":
        init = None if fit is None else (fit.p_hat, fit.epsilon_hat)
        return lambda shots: mle_ipr(shots, init)
    if name == "fidelity":
        if ideal is None:
            raise InvalidInput("The fidelity estimator needs the ideal state.")
        return lambda shots: classical_fidelity(shots.one_hot_distribution(), ideal)
    raise InvalidInput(f"Unknown estimator {name!r}, use one of {', '.join(ESTIMATORS)}.")


@dataclass
class BootstrapResult:
    mean: float
    std: float
    redrawn: int
    values: np.ndarray = field(repr=False)

    def dump(self) -> dict:
        return {"mean": self.mean, "std": self.std, "redrawn": self.redrawn}


def bootstrap(
    shots: ShotSet,
    estimator: Estimator | str,
    n_resamples: int,
    seed: int,
    *,
    workers: int = 1,
    index: int = 0,
    ideal: SingleParticleState | None = None,
) -> BootstrapResult:
    """Resample the shots with replacement and re-run ``estimator``.

    Resample ``r`` draws from the ``bootstrap`` stream slot
    ``index·n_resamples + r``. A resample on which the estimator raises
    :class:`EstimatorError` is drawn again from the same stream.
    """
    if n_resamples < MIN_RESAMPLES:
        raise InvalidInput(f"Bootstrap needs at least {MIN_RESAMPLES} resamples.")
    if shots.total == 0:
        raise EstimatorError("Cannot bootstrap an empty shot set.")
    if isinstance(estimator, str):
        fit = mle_fit(shots) if estimator == "mle-ipr" else None
        estimator = resolve_estimator(estimator, ideal=ideal, fit=fit)

    bitstrings = shots.bitstrings()
    probabilities = shots.counts() / shots.total

    def resample(r: int) -> tuple[float, int]:
        generator = rng.generator(seed, "bootstrap", index * n_resamples + r)
        for redraws in range(MAX_REDRAWS + 1):
            counts = generator.multinomial(shots.total, probabilities)
            drawn = ShotSet.from_arrays(shots.num_qubits, bitstrings, counts)
            try:
                return estimator(drawn), redraws
            except EstimatorError:
                continue
        raise EstimatorError(f"Estimator failed on {MAX_REDRAWS} redraws of resample {r}.")

    results = ordered_map(resample, range(n_resamples), workers)
    values = np.array([value for value, _ in results])
    redrawn = sum(redraws for _, redraws in results)
    if redrawn:
        core_log.warning(None, f"Bootstrap redrew {redrawn} resamples.")
    return BootstrapResult(
        mean=float(np.mean(values)),
        std=float(np.std(values, ddof=1)),
        redrawn=redrawn,
        values=values,
    )
