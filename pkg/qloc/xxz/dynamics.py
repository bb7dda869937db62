from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from qloc.circuit import Circuit, GateOp, QuantumStateSector, apply
from qloc.exceptions import InvalidInput
from qloc.xxz.model import XXZModel, bond_energies, dense_spectrum, ground_state

STEP_TOLERANCE: float = 1e-9


@dataclass
class EnergyDensity:
    """Ground-subtracted bond energies, one row per time."""

    times: np.ndarray
    values: np.ndarray = field(repr=False)

    def totals(self) -> np.ndarray:
        return self.values.sum(axis=1)

    def rows(self) -> list[dict]:
        return [
            {"t": float(t), **{f"E{n}": float(e) for n, e in enumerate(row)}}
            for t, row in zip(self.times, self.values)
        ]


def trotter_step(model: XXZModel, dt: float) -> Circuit:
    """Even then odd bonds, each ``XXZ(−dt, Δ·dt)``."""
    N = model.N
    circuit = Circuit(num_qubits=N)
    for start in (0, 1):
        circuit.extend(
            GateOp.xxz(n, (n + 1) % N, -dt, model.delta * dt) for n in range(start, N, 2)
        )
    return circuit


def _exact_states(
    model: XXZModel, amplitudes: np.ndarray, times: np.ndarray
) -> list[np.ndarray]:
    energies, vectors = dense_spectrum(model)
    coefficients = vectors.T @ amplitudes
    return [vectors @ (np.exp(-1j * energies * t) * coefficients) for t in times]


def _trotter_states(
    model: XXZModel, state: QuantumStateSector, times: np.ndarray, dt: float
) -> list[np.ndarray]:
    step = trotter_step(model, dt)
    steps = [t / dt for t in times]
    if any(abs(s - round(s)) > STEP_TOLERANCE or s < 0 for s in steps):
        raise InvalidInput(f"Every time must be a nonnegative multiple of δt={dt}.")
    order = np.argsort(times)
    states: list[np.ndarray] = [np.empty(0)] * len(times)
    current, done = state.copy(), 0
    for i in order:
        for _ in range(round(steps[i]) - done):
            result = apply(step, current, backend="sector")
            assert isinstance(result.state, QuantumStateSector)
            current = result.state
        done = round(steps[i])
        states[i] = current.amplitudes.copy()
    return states


def evolve_energy_density(
    state: QuantumStateSector,
    model: XXZModel,
    t_grid: Sequence[float],
    dt: float | None = None,
) -> EnergyDensity:
    """Bond energy density minus its ground-state value along ``t_grid``.

    Without ``dt`` the evolution is exact (dense sector spectrum);
    otherwise it is first-order Trotter with step ``dt``.
    """
    if state.num_qubits != model.N or state.excitations != model.excitations:
        raise InvalidInput("State does not live in the half-filling sector of the model.")
    times = np.asarray(t_grid, dtype=float)
    _, ground = ground_state(model)
    reference = bond_energies(model, ground.amplitudes)

    if dt is None:
        states = _exact_states(model, state.amplitudes, times)
    else:
        states = _trotter_states(model, state, times, dt)
    values = np.array([bond_energies(model, amplitudes) - reference for amplitudes in states])
    return EnergyDensity(times=times, values=values)


def wavepacket_center(row: np.ndarray) -> float:
    """Circular centroid of the positive part of a bond-energy profile, in bond units."""
    weights = np.clip(np.asarray(row, dtype=float), 0, None)
    if weights.sum() == 0:
        raise InvalidInput("Energy profile has no positive weight.")
    N = len(weights)
    angle = np.angle(weights @ np.exp(2j * np.pi * np.arange(N) / N))
    return float(angle * N / (2 * np.pi)) % N


def velocity(density: EnergyDensity) -> float:
    """Slope of the unwrapped centroid over time, in sites per unit time."""
    N = density.values.shape[1]
    angles = np.array([2 * math.pi * wavepacket_center(row) / N for row in density.values])
    positions = np.unwrap(angles) * N / (2 * math.pi)
    slope, _ = np.polyfit(density.times, positions, 1)
    return float(slope)
