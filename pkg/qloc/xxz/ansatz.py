from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
import scipy.optimize

from qloc import logger
from qloc.anderson import SingleParticleState
from qloc.circuit import Circuit, GateOp, QuantumStateSector, apply, sector_basis
from qloc.exceptions import InvalidInput
from qloc.stateprep import AmplitudeTreePlan
from qloc.utils.parallel import ordered_map
from qloc.xxz.model import XXZModel, energy
from qloc.xxz.spectrum import exact_lowest_excitations, momentum_grid

core_log = logger.Core.logger()

# Largest Gaussian weight allowed outside 0 < |k| < π/2
SUPPORT_LEAKAGE: float = 1e-3
FD_STEP: float = 1e-4
RICHARDSON_STEP: float = 1e-3


@dataclass(frozen=True)
class QuasiparticleWavepacketSpec:
    """Gaussian packet of singlet excitations; ``x0`` counts two-site cells."""

    k0: float
    sigma_p: float
    x0: float | None = None

    def __post_init__(self):
        if self.sigma_p <= 0:
            raise InvalidInput(f"Momentum spread must be positive, got {self.sigma_p}.")
        if not -np.pi < self.k0 <= np.pi:
            raise InvalidInput(f"k0={self.k0} is outside (−π, π].")

    def center(self, N: int) -> float:
        return float(N // 4) if self.x0 is None else self.x0

    def momentum_weights(self, k: np.ndarray) -> np.ndarray:
        return np.exp(-((k - self.k0) ** 2) / (2 * self.sigma_p**2))

    def check_support(self, N: int) -> None:
        """Reject packets with too much weight at k = 0 or |k| ≥ π/2."""
        k = momentum_grid(N)
        weights = self.momentum_weights(k)
        outside = (np.abs(k) < 1e-12) | (np.abs(k) >= np.pi / 2 - 1e-12)
        leakage = weights[outside].sum() / weights.sum()
        if leakage >= SUPPORT_LEAKAGE:
            raise InvalidInput(
                f"Packet k0={self.k0:.4f}, σ={self.sigma_p} puts {leakage:.2e} of its "
                "weight outside 0 < |k| < π/2."
            )

    def dump(self) -> dict:
        return {"k0": self.k0, "sigma_p": self.sigma_p, "x0": self.x0}


def cell_momenta(N: int) -> np.ndarray:
    """Momenta ``2πm/N`` distinct modulo π, chosen in (−π/2, π/2]."""
    cells = N // 2
    orders = np.arange(-((cells - 1) // 2), cells // 2 + 1)
    return 2 * np.pi * orders / N


def singlet_amplitudes(spec: QuasiparticleWavepacketSpec, N: int) -> np.ndarray:
    """Return the normalized cell amplitudes ``c_n``, ``n = 0 … N/2 − 1``."""
    k = cell_momenta(N)
    cells = np.arange(N // 2)
    weights = np.exp(-((k - spec.k0) ** 2) / (4 * spec.sigma_p**2))
    phases = np.exp(2j * np.outer(cells - spec.center(N), k))
    c = phases @ weights
    return c / np.linalg.norm(c)


def singlet_wavepacket_amplitudes(c: np.ndarray, N: int) -> np.ndarray:
    """Sector amplitudes of Σ_n c_n |singlet at cell n⟩ on a triplet background.

    Per cell, triplet = (|10⟩ + |01⟩)/√2 and singlet = (|10⟩ − |01⟩)/√2
    written as |even odd⟩.
    """
    cells = N // 2
    basis = sector_basis(N, cells)
    even = np.stack([basis.bits(2 * n) for n in range(cells)], axis=1)
    odd = np.stack([basis.bits(2 * n + 1) for n in range(cells)], axis=1)
    paired = np.all(even + odd == 1, axis=1)
    amplitudes = np.zeros(len(basis), dtype=complex)
    amplitudes[paired] = (2 * even[paired] - 1) @ np.asarray(c) / 2 ** (cells / 2)
    return amplitudes


def pair_block_ops(cell: int) -> list[GateOp]:
    """Triplet from |00⟩, singlet from |10⟩ (excited even qubit)."""
    even, odd = 2 * cell, 2 * cell + 1
    return [GateOp.ry(even, math.pi / 2), GateOp.cnot(even, odd), GateOp.x(odd)]


def singlet_wavepacket_circuit(c: np.ndarray, N: int) -> Circuit:
    """W(k0) tree on the even qubits followed by one pair block per cell."""
    if N < 4 or N % 2:
        raise InvalidInput(f"Need an even chain of at least 4 sites, got {N}.")
    if len(c) != N // 2:
        raise InvalidInput(f"Expected {N // 2} cell amplitudes, got {len(c)}.")
    site_amplitudes = np.zeros(N, dtype=complex)
    site_amplitudes[0::2] = c
    plan = AmplitudeTreePlan.from_state(SingleParticleState.normalized(site_amplitudes))
    ops = plan.ops()
    for cell in range(N // 2):
        ops += pair_block_ops(cell)
    return Circuit(num_qubits=N, ops=ops, prologue=len(ops))


def initial_wavepacket_state(
    spec: QuasiparticleWavepacketSpec, N: int
) -> tuple[QuantumStateSector, Circuit]:
    """Prepare the singlet wavepacket; return the simulated state and its circuit."""
    spec.check_support(N)
    circuit = singlet_wavepacket_circuit(singlet_amplitudes(spec, N), N)
    result = apply(circuit, backend="sector", excitations=N // 2)
    assert isinstance(result.state, QuantumStateSector)
    return result.state, circuit


@dataclass(frozen=True, eq=False)
class AnsatzParameters:
    theta: np.ndarray = field(repr=False)

    def __post_init__(self):
        theta = np.asarray(self.theta, dtype=float)
        if theta.ndim != 1 or len(theta) == 0 or len(theta) % 4:
            raise InvalidInput(f"Ansatz needs 4·n_L angles, got {theta.shape}.")
        if not np.all(np.isfinite(theta)):
            raise InvalidInput("Ansatz angles must be finite.")
        object.__setattr__(self, "theta", theta)

    @property
    def n_layers(self) -> int:
        return len(self.theta) // 4

    def layer(self, index: int) -> tuple[float, float, float, float]:
        a, b, c, d = self.theta[4 * index : 4 * index + 4]
        return float(a), float(b), float(c), float(d)


def ansatz_circuit(params: AnsatzParameters, N: int) -> Circuit:
    """Alternate even-bond and odd-bond XXZ layers; the wrap bond is odd."""
    circuit = Circuit(num_qubits=N)
    for layer in range(params.n_layers):
        even_i, even_j, odd_i, odd_j = params.layer(layer)
        circuit.extend(GateOp.xxz(n, n + 1, even_i, even_j) for n in range(0, N, 2))
        circuit.extend(GateOp.xxz(n, (n + 1) % N, odd_i, odd_j) for n in range(1, N, 2))
    return circuit


def adiabatic_initial_guess(n_layers: int, delta: float) -> AnsatzParameters:
    if n_layers < 1:
        raise InvalidInput("The ansatz needs at least one layer.")
    theta = np.empty(4 * n_layers)
    for layer in range(n_layers):
        ramp = (layer + 0.5) / n_layers**2
        theta[4 * layer : 4 * layer + 4] = (1 / n_layers, delta / n_layers, ramp, delta * ramp)
    return AnsatzParameters(theta)


def energy_objective(
    params: AnsatzParameters, model: XXZModel, initial: QuantumStateSector
) -> float:
    """⟨ψ_init| U†(θ) H U(θ) |ψ_init⟩."""
    if initial.num_qubits != model.N or initial.excitations != model.excitations:
        raise InvalidInput("Initial state does not live in the half-filling sector of the model.")
    result = apply(ansatz_circuit(params, model.N), initial, backend="sector")
    return energy(model, result.state.amplitudes)


def fd_gradient(
    objective, theta: np.ndarray, step: float = FD_STEP, workers: int = 1
) -> np.ndarray:
    """Central finite-difference gradient."""

    def component(i: int) -> float:
        shift = np.zeros_like(theta)
        shift[i] = step
        return (objective(theta + shift) - objective(theta - shift)) / (2 * step)

    return np.array(ordered_map(component, range(len(theta)), workers))


def richardson_gradient(objective, theta: np.ndarray, workers: int = 1) -> np.ndarray:
    coarse = fd_gradient(objective, theta, RICHARDSON_STEP, workers)
    fine = fd_gradient(objective, theta, RICHARDSON_STEP / 2, workers)
    return (4 * fine - coarse) / 3


@dataclass
class VariationalResult:
    theta: np.ndarray = field(repr=False)
    energy: float
    trace: list[float] = field(repr=False)
    evaluations: int
    line_search_failed: bool
    message: str
    gradient_check: float

    @property
    def params(self) -> AnsatzParameters:
        return AnsatzParameters(self.theta)

    def dump(self) -> dict:
        return {
            "theta": self.theta.tolist(),
            "energy": self.energy,
            "trace": self.trace,
            "evaluations": self.evaluations,
            "line_search_failed": self.line_search_failed,
            "message": self.message,
            "gradient_check": self.gradient_check,
        }


def optimize(
    model: XXZModel,
    spec: QuasiparticleWavepacketSpec,
    n_layers: int,
    tol: float = 1e-9,
    max_evals: int = 20_000,
    *,
    workers: int = 1,
    initial: QuantumStateSector | None = None,
    guess: AnsatzParameters | None = None,
) -> VariationalResult:
    """Minimize the ansatz energy with BFGS and finite-difference gradients.

    Starts from the adiabatic guess unless ``guess`` is given and from the
    singlet wavepacket of ``spec`` unless ``initial`` is given. Stops when
    an accepted iterate lowers the energy by less than ``tol`` or after
    ``max_evals`` energy evaluations.
    """
    if initial is None:
        initial, _ = initial_wavepacket_state(spec, model.N)
    if guess is None:
        guess = adiabatic_initial_guess(n_layers, model.delta)
    if guess.n_layers != n_layers:
        raise InvalidInput(f"Guess has {guess.n_layers} layers, expected {n_layers}.")

    evaluations: int = 0

    def objective(theta: np.ndarray) -> float:
        nonlocal evaluations
        evaluations += 1
        return energy_objective(AnsatzParameters(theta), model, initial)

    def gradient(theta: np.ndarray) -> np.ndarray:
        return fd_gradient(objective, theta, FD_STEP, workers)

    start = guess.theta.copy()
    reference = richardson_gradient(objective, start, workers)
    check = float(np.max(np.abs(gradient(start) - reference)))
    if check > 1e-5:
        core_log.warning(None, f"Finite-difference gradient deviates by {check:.2e}.")

    trace: list[float] = [objective(start)]

    def callback(intermediate_result: scipy.optimize.OptimizeResult) -> None:
        trace.append(float(intermediate_result.fun))
        if abs(trace[-2] - trace[-1]) < tol or evaluations >= max_evals:
            raise StopIteration

    result = scipy.optimize.minimize(
        objective,
        start,
        jac=gradient,
        method="BFGS",
        callback=callback,
        options={"gtol": 1e-8, "maxiter": max_evals},
    )
    line_search_failed = result.status == 2
    if line_search_failed:
        core_log.warning(None, f"BFGS stopped early: {result.message}")

    return VariationalResult(
        theta=np.asarray(result.x),
        energy=float(result.fun),
        trace=trace,
        evaluations=evaluations,
        line_search_failed=line_search_failed,
        message=str(result.message),
        gradient_check=check,
    )


def exact_wavepacket_energy(
    model: XXZModel, spec: QuasiparticleWavepacketSpec, *, workers: int = 1
) -> float:
    """Σ_k |g_k|² E_k / Σ_k |g_k|² over the cell momenta, E_k the lowest level at k."""
    spectrum = exact_lowest_excitations(model, workers)
    k = cell_momenta(model.N)
    weights = spec.momentum_weights(k)
    energies = np.array([spectrum.level(value).energy for value in k])
    return float(weights @ energies / weights.sum())


def layer_sweep(
    model: XXZModel,
    spec: QuasiparticleWavepacketSpec,
    layer_counts: Sequence[int],
    tol: float = 1e-9,
    max_evals: int = 20_000,
    *,
    workers: int = 1,
) -> list[dict]:
    """Gap E_ansatz − E_WP per layer count, each from its own adiabatic guess."""
    target = exact_wavepacket_energy(model, spec, workers=workers)
    initial, _ = initial_wavepacket_state(spec, model.N)
    rows: list[dict] = []
    for n_layers in layer_counts:
        result = optimize(
            model, spec, n_layers, tol, max_evals, workers=workers, initial=initial
        )
        rows.append(
            {
                "N": model.N,
                "delta": model.delta,
                "n_layers": n_layers,
                "energy": result.energy,
                "exact_energy": target,
                "gap": result.energy - target,
                "evaluations": result.evaluations,
            }
        )
        core_log.info(
            None,
            f"XXZ Δ={model.delta} n_L={n_layers}: gap {result.energy - target:.3e}.",
        )
    return rows
