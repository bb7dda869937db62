"""W-state preparation with mid-circuit measurement and feedforward.

``mcm-ff-1`` heralds one excitation shared by the roots of the two halves
with a parity measurement, then spreads it over each half with the unitary
tree. ``mcm-ff-2`` is only available through its closed-form success
probability and ideal fidelity.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from qloc import logger, rng
from qloc.anderson import SingleParticleState
from qloc.circuit import Circuit, GateOp, QuantumStateFull, QuantumStateSector, apply
from qloc.exceptions import InvalidInput
from qloc.stateprep.tree import AmplitudeTreePlan, w_state
from qloc.utils.parallel import ordered_map

core_log = logger.Core.logger()


def _check_even(num_qubits: int) -> None:
    if num_qubits < 2 or num_qubits % 2:
        raise InvalidInput(f"Fusion needs an even number of qubits, got {num_qubits}.")


def fusion_ops(root_a: int, root_b: int) -> list[GateOp]:
    """Parity measurement of two |+⟩ roots with feedforward.

    Outcome 1 leaves ``(|10⟩ + |01⟩)/√2`` on the roots.
    """
    return [
        GateOp.ry(root_a, math.pi / 2),
        GateOp.ry(root_b, math.pi / 2),
        GateOp.cnot(root_a, root_b),
        GateOp.measure(root_b, 0),
        GateOp.controlled(0, GateOp.cnot(root_a, root_b)),
    ]


def _spreading_ops(num_qubits: int) -> list[GateOp]:
    half = num_qubits // 2
    ops: list[GateOp] = []
    for offset in (0, half):
        amplitudes = np.zeros(num_qubits, dtype=complex)
        amplitudes[offset : offset + half] = 1 / math.sqrt(half)
        plan = AmplitudeTreePlan.from_state(SingleParticleState(amplitudes))
        ops += plan.ops(root=False)
    return ops


def mcmff1_circuit(num_qubits: int) -> Circuit:
    """Return the full protocol circuit; clbit 0 holds the success flag."""
    _check_even(num_qubits)
    ops = fusion_ops(0, num_qubits // 2) + _spreading_ops(num_qubits)
    return Circuit(num_qubits=num_qubits, ops=ops, num_clbits=1, prologue=len(ops))


@dataclass
class FusionOutcome:
    success: bool
    state: QuantumStateFull | QuantumStateSector | None


def mcmff1_run(
    num_qubits: int, seed: int, *, backend: str = "sector", trial: int = 0
) -> FusionOutcome:
    """Run one trial of the protocol.

    The roots are fused first and each half is spread afterwards; the
    spreading unitaries act on disjoint qubits from the measurement, so the
    heralded state and the 1/2 success rate equal preparing ``W_{N/2}`` on
    each half and then fusing.

    Both backends draw the measurement from the ``measure`` stream of
    ``(seed, trial)`` and so herald the same outcome. The sector backend
    simulates the fusion on the two roots and spreads only the heralded
    single-excitation state; the full backend runs the whole register.
    """
    _check_even(num_qubits)
    generator = rng.generator(seed, "measure", trial)

    if backend == "full":
        result = apply(mcmff1_circuit(num_qubits), backend="full", generator=generator)
        success = result.clbits[0] == 1
        return FusionOutcome(success, result.state if success else None)

    if backend != "sector":
        raise InvalidInput(f"Unknown backend {backend!r}, use 'full' or 'sector'.")

    roots = apply(
        Circuit(num_qubits=2, ops=fusion_ops(0, 1), num_clbits=1),
        backend="full",
        generator=generator,
    )
    if roots.clbits[0] != 1:
        return FusionOutcome(False, None)

    half = num_qubits // 2
    pair = roots.state.amplitudes
    amplitudes = np.zeros(num_qubits, dtype=complex)
    amplitudes[0], amplitudes[half] = pair[0b01], pair[0b10]
    spreading = Circuit(num_qubits=num_qubits, ops=_spreading_ops(num_qubits))
    spreading.prologue = len(spreading)
    result = apply(
        spreading,
        QuantumStateSector.from_single_particle(SingleParticleState.normalized(amplitudes)),
        backend="sector",
    )
    return FusionOutcome(True, result.state)


def mcmff1_success_rate(
    num_qubits: int, n_trials: int, seed: int, *, workers: int = 1
) -> float:
    """Fraction of ``n_trials`` heralded successes."""
    if n_trials < 1:
        raise InvalidInput("At least one trial is required.")
    _check_even(num_qubits)

    def trial(index: int) -> bool:
        generator = rng.generator(seed, "measure", index)
        result = apply(
            Circuit(num_qubits=2, ops=fusion_ops(0, 1), num_clbits=1),
            backend="full",
            generator=generator,
        )
        return result.clbits[0] == 1

    successes = sum(ordered_map(trial, range(n_trials), workers))
    return successes / n_trials


@dataclass(frozen=True)
class MCMFF2Config:
    N: int
    delta: float

    def __post_init__(self):
        if self.N < 2:
            raise InvalidInput(f"At least two qubits are needed, got {self.N}.")
        if not 0 < self.delta < self.N / 4:
            raise InvalidInput(f"δ must lie in (0, N/4) = (0, {self.N / 4}), got {self.delta}.")


def mcmff2_success_probability(config: MCMFF2Config) -> float:
    return 0.5 - 0.5 * (1 - 4 * config.delta / config.N) ** (config.N / 2)


def mcmff2_ideal_fidelity(config: MCMFF2Config) -> float:
    p_success = mcmff2_success_probability(config)
    return config.delta / p_success * (1 - 2 * config.delta / config.N) ** (config.N / 2 - 1)


def mcmff2_table(
    sizes: Sequence[int] = (8, 12, 16, 20, 32), delta: float = 0.2
) -> list[dict]:
    rows: list[dict] = []
    for N in sizes:
        config = MCMFF2Config(N=N, delta=delta)
        rows.append(
            {
                "N": N,
                "delta": delta,
                "p_success": mcmff2_success_probability(config),
                "fidelity": mcmff2_ideal_fidelity(config),
            }
        )
    return rows


def success_branch_fidelity(num_qubits: int, seed: int) -> float:
    """|⟨W_N|ψ⟩|² of the first heralded trial of ``seed``."""
    target = w_state(num_qubits)
    trial: int = 0
    while True:
        outcome = mcmff1_run(num_qubits, seed, trial=trial)
        if outcome.success:
            assert isinstance(outcome.state, QuantumStateSector)
            return float(abs(np.vdot(target.amplitudes, outcome.state.amplitudes)) ** 2)
        trial += 1
