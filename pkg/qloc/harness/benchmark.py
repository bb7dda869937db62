"""Noisy W-state preparation benchmark.

Every method is scored by the classical fidelity between the one-hot
frequencies of its readout and the ideal W state, under the same IID
readout flips.
"""

from __future__ import annotations

import math
from collections.abc import Sequence

from qloc import logger
from qloc.circuit import apply
from qloc.exceptions import EstimatorError, InvalidInput
from qloc.mitigation import BitFlipModel, bootstrap, corrupt
from qloc.stateprep import (
    MCMFF2Config,
    classical_fidelity,
    mcmff1_run,
    mcmff1_success_rate,
    mcmff2_ideal_fidelity,
    mcmff2_success_probability,
    synthesize_wavepacket_circuit,
    w_state,
)

core_log = logger.Core.logger()

METHODS = ("unitary", "mcm-ff-1", "mcm-ff-2")
HERALD_TRIALS = 2000
MCMFF2_DELTA = 0.2


def _noisy_fidelity(
    state, N: int, shots: int, epsilon: float, seed: int, index: int, workers: int
) -> tuple[float, float]:
    target = w_state(N)
    noisy = corrupt(state, BitFlipModel(epsilon), seed, n_shots=shots, index=index)
    fidelity = classical_fidelity(noisy.one_hot_distribution(), target)
    try:
        stderr = bootstrap(
            noisy, "fidelity", 100, seed, workers=workers, index=index, ideal=target
        ).std
    except EstimatorError:
        stderr = math.nan
    return fidelity, stderr


def benchmark_preparation(
    N_list: Sequence[int],
    shots: int,
    epsilon: float,
    seed: int,
    *,
    workers: int = 1,
    delta: float = MCMFF2_DELTA,
) -> list[dict]:
    """Compare the three W-state preparations for every size in ``N_list``.

    ``mcm-ff-1`` keeps only the heralded branch, so it is charged
    ``shots`` scaled by the observed success rate. ``mcm-ff-2`` reports its
    closed-form ideal fidelity with binomial shot noise on the heralded
    fraction of ``shots``.
    """
    if shots < 1:
        raise InvalidInput("The benchmark needs at least one shot.")
    rows: list[dict] = []
    for position, N in enumerate(N_list):
        if N < 2 or N % 2:
            raise InvalidInput(f"Benchmark sizes must be even, got {N}.")

        state = apply(synthesize_wavepacket_circuit(w_state(N)), backend="sector").state
        fidelity, stderr = _noisy_fidelity(
            state, N, shots, epsilon, seed, 2 * position, workers
        )
        rows.append(
            {"method": "unitary", "N": N, "shots": shots, "fidelity": fidelity, "stderr": stderr}
        )

        rate = mcmff1_success_rate(N, min(shots, HERALD_TRIALS), seed, workers=workers)
        kept = round(shots * rate)
        trial = 0
        outcome = mcmff1_run(N, seed, trial=trial)
        while not outcome.success:
            trial += 1
            outcome = mcmff1_run(N, seed, trial=trial)
        if kept > 0:
            fidelity, stderr = _noisy_fidelity(
                outcome.state, N, kept, epsilon, seed, 2 * position + 1, workers
            )
        else:
            fidelity, stderr = math.nan, math.nan
        rows.append(
            {"method": "mcm-ff-1", "N": N, "shots": kept, "fidelity": fidelity, "stderr": stderr}
        )

        config = MCMFF2Config(N=N, delta=delta)
        p_success = mcmff2_success_probability(config)
        fidelity = mcmff2_ideal_fidelity(config)
        rows.append(
            {
                "method": "mcm-ff-2",
                "N": N,
                "shots": round(shots * p_success),
                "fidelity": fidelity,
                "stderr": math.sqrt(fidelity * (1 - fidelity) / max(1.0, p_success * shots)),
            }
        )
        core_log.debug(None, f"Preparation benchmark finished N={N}.")
    return rows
