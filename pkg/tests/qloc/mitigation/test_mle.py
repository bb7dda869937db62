import numpy as np
import pytest

from qloc.circuit import ShotSet
from qloc.exceptions import InvalidInput
from qloc.mitigation import (
    BitFlipModel,
    corrupt,
    initial_guess,
    log_likelihood,
    mle_fit,
    synthetic_shots,
    total_variation,
)


def test_mle_without_noise_is_empirical():
    p = np.array([0.1, 0.2, 0.3, 0.4])
    shots = synthetic_shots(p, 100_000, seed=0)
    fit = mle_fit(shots)

    assert fit.converged
    assert fit.epsilon_hat < 1e-3
    assert np.allclose(shots.one_hot_distribution(), fit.p_hat, atol=1e-6)


def test_mle_recovers_uniform():
    p = np.full(8, 1 / 8)
    shots = corrupt(synthetic_shots(p, 100_000, seed=1), BitFlipModel(0.05), seed=1)
    fit = mle_fit(shots)

    assert 0.05 == pytest.approx(fit.epsilon_hat, abs=0.005)
    assert total_variation(fit.p_hat, p) < 0.01


def test_mle_recovers_concentrated():
    p = np.full(12, 0.1 / 11)
    p[5] = 0.9
    shots = corrupt(synthetic_shots(p, 10_000, seed=2), BitFlipModel(0.1), seed=2)
    fit = mle_fit(shots)

    assert 0.1 == pytest.approx(fit.epsilon_hat, abs=0.02)
    assert 5 == int(np.argmax(fit.p_hat))


def test_mle_invariants():
    p = np.array([0.6, 0.3, 0.1, 0.0, 0.0])
    shots = corrupt(synthetic_shots(p, 3000, seed=3), BitFlipModel(0.08), seed=3)
    fit = mle_fit(shots)

    assert np.all(fit.p_hat >= 0)
    assert 1.0 == pytest.approx(fit.p_hat.sum(), abs=1e-12)
    assert 0 <= fit.epsilon_hat < 0.5
    steps = np.diff(fit.trace)
    assert np.all(steps >= -1e-8 * np.abs(fit.trace[1:]))
    assert len(fit.trace) == fit.iterations + 1
    assert fit.log_likelihood == pytest.approx(
        log_likelihood(shots, fit.p_hat, fit.epsilon_hat)
    )


def test_mle_iteration_limit():
    shots = corrupt(synthetic_shots(np.full(6, 1 / 6), 2000, seed=4), BitFlipModel(0.1), seed=4)
    fit = mle_fit(shots, max_iter=1)
    assert 1 == fit.iterations
    assert not fit.converged


def test_mle_initial_guess():
    shots = ShotSet.from_dict({"0001": 6, "0010": 2, "0111": 2})
    p0, epsilon0 = initial_guess(shots)

    assert np.allclose([0.9 * 0.75 + 0.025, 0.9 * 0.25 + 0.025, 0.025, 0.025], p0)
    assert 0.2 * 2 / 4 == pytest.approx(epsilon0)


def test_mle_warm_start():
    shots = corrupt(synthetic_shots(np.full(6, 1 / 6), 2000, seed=5), BitFlipModel(0.05), seed=5)
    cold = mle_fit(shots)
    warm = mle_fit(shots, init=(cold.p_hat, cold.epsilon_hat))

    assert warm.iterations <= cold.iterations
    assert warm.log_likelihood == pytest.approx(cold.log_likelihood)


def test_mle__negative():
    with pytest.raises(InvalidInput):
        mle_fit(ShotSet(num_qubits=3, records={}))
    shots = ShotSet.from_dict({"001": 1})
    with pytest.raises(InvalidInput):
        mle_fit(shots, init=(np.ones(4), 0.1))
    with pytest.raises(InvalidInput):
        mle_fit(shots, init=(np.zeros(3), 0.1))
