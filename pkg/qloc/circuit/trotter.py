from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from qloc import logger
from qloc.anderson import (
    DisorderRealization,
    Lattice,
    SingleParticleState,
    WavepacketSpec,
    build_hamiltonian,
    build_wavepacket,
    diagonalize,
    exact_evolve,
    ipr,
)
from qloc.circuit.backends import QuantumStateSector, apply
from qloc.circuit.ir import Circuit, GateOp
from qloc.exceptions import InvalidInput

core_log = logger.Core.logger()

# Allowed distance of t/δt from an integer
STEP_TOLERANCE: float = 1e-9


@dataclass(frozen=True)
class TrotterPlan:
    """First-order product formula: ``n_steps`` steps of size ``dt``."""

    dt: float
    n_steps: int
    disorder: DisorderRealization
    lattice: Lattice

    def __post_init__(self):
        if self.dt <= 0:
            raise InvalidInput(f"Trotter step must be positive, got {self.dt}.")
        if self.n_steps < 0:
            raise InvalidInput("Number of Trotter steps cannot be negative.")
        if self.disorder.num_sites != self.lattice.num_sites:
            raise InvalidInput(
                f"Disorder has {self.disorder.num_sites} values, "
                f"lattice {self.lattice} has {self.lattice.num_sites} sites."
            )

    @staticmethod
    def from_time(
        lattice: Lattice, disorder: DisorderRealization, t: float, dt: float
    ) -> TrotterPlan:
        if dt <= 0:
            raise InvalidInput(f"Trotter step must be positive, got {dt}.")
        ratio = t / dt
        n_steps = round(ratio)
        if abs(ratio - n_steps) > STEP_TOLERANCE or n_steps < 0:
            raise InvalidInput(f"t={t} is not a nonnegative multiple of δt={dt}.")
        return TrotterPlan(dt=dt, n_steps=n_steps, disorder=disorder, lattice=lattice)

    @property
    def time(self) -> float:
        return self.dt * self.n_steps


def hopping_layers(lattice: Lattice) -> list[list[tuple[int, int]]]:
    """Split the bonds into even/odd layers per direction.

    A bond starting at coordinate ``x`` along a direction of length ``L``
    goes to the layer of the parity of ``x``. On an odd ``L`` the wrap bond
    ``(L−1 → 0)`` would share site 0 with the even layer, so it is moved
    to the odd layer.
    """
    coordinates = lattice.coordinates()
    layers: list[list[tuple[int, int]]] = [[] for _ in range(2 * lattice.dimension)]
    for i, j, direction in lattice.bonds():
        x = int(coordinates[i, direction])
        length = lattice.dims[direction]
        parity = x % 2
        if length % 2 == 1 and x == length - 1:
            parity = 1
        layers[2 * direction + parity].append((i, j))
    return layers


def build_trotter_circuit(plan: TrotterPlan) -> Circuit:
    """Return ``n_steps`` hopping-then-potential steps on the lattice qubits."""
    lattice = plan.lattice
    circuit = Circuit(num_qubits=lattice.num_sites)
    layers = hopping_layers(lattice)
    potential = [GateOp.rz(i, -w * plan.dt) for i, w in enumerate(plan.disorder.values)]
    for _ in range(plan.n_steps):
        for layer in layers:
            circuit.extend(GateOp.xxz(i, j, -plan.dt, 0.0) for i, j in layer)
        circuit.extend(potential)
    return circuit


def trotter_evolve(plan: TrotterPlan, state: SingleParticleState) -> SingleParticleState:
    """Run the Trotter circuit of ``plan`` on the sector backend."""
    circuit = build_trotter_circuit(plan)
    result = apply(circuit, QuantumStateSector.from_single_particle(state), backend="sector")
    assert isinstance(result.state, QuantumStateSector)
    return result.state.to_single_particle()


def state_distance(a: SingleParticleState, b: SingleParticleState) -> float:
    """Return min over φ of ‖a − e^{iφ} b‖."""
    overlap = abs(np.vdot(a.amplitudes, b.amplitudes))
    return math.sqrt(max(0.0, 2 - 2 * overlap))


@dataclass
class TrotterComparison:
    time: float
    dt_values: list[float]
    iprs: list[float]
    errors: list[float]
    exact_ipr: float

    def rows(self) -> list[dict]:
        return [
            {
                "t": self.time,
                "dt": dt,
                "ipr": value,
                "exact_ipr": self.exact_ipr,
                "state_error": error,
            }
            for dt, value, error in zip(self.dt_values, self.iprs, self.errors)
        ]


def trotter_vs_exact(
    lattice: Lattice,
    disorder: DisorderRealization,
    spec: WavepacketSpec,
    t: float,
    dt_list: Sequence[float],
) -> TrotterComparison:
    """Compare Trotterized and exact evolution of the wavepacket ``spec`` at time ``t``."""
    plans = [TrotterPlan.from_time(lattice, disorder, t, dt) for dt in dt_list]
    initial = build_wavepacket(lattice, spec)
    exact = exact_evolve(diagonalize(build_hamiltonian(lattice, disorder)), initial, t)

    iprs: list[float] = []
    errors: list[float] = []
    for plan in plans:
        evolved = trotter_evolve(plan, initial)
        iprs.append(ipr(evolved))
        errors.append(state_distance(exact, evolved))
        core_log.debug(
            None,
            f"Trotter δt={plan.dt} ({plan.n_steps} steps): "
            f"IPR {iprs[-1]:.6f}, state error {errors[-1]:.3e}.",
        )
    return TrotterComparison(
        time=t,
        dt_values=[float(dt) for dt in dt_list],
        iprs=iprs,
        errors=errors,
        exact_ipr=ipr(exact),
    )


def state_error(
    lattice: Lattice,
    disorder: DisorderRealization,
    spec: WavepacketSpec,
    t: float,
    dt_list: Sequence[float],
) -> list[float]:
    """Return the phase-insensitive distance to exact evolution for each δt."""
    return trotter_vs_exact(lattice, disorder, spec, t, dt_list).errors
