"""Statevector backends for :class:`~qloc.circuit.ir.Circuit`.

Qubit ``q`` is bit ``q`` of a basis index. The full backend stores all
``2^n`` amplitudes. The sector backend stores only the basis states with a
fixed number of excitations (ones), which is exact for circuits built from
RZ, XXZ and measurements.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
import ring

from qloc import _tracing, rng
from qloc.anderson import SingleParticleState
from qloc.circuit.ir import Circuit, GateKind, GateOp
from qloc.circuit.shots import ShotSet
from qloc.exceptions import InvalidInput, SectorViolation

_trace = _tracing.register("qloc_circuit")

# Amplitudes below this are dropped from the sparse prologue state
SPARSE_CUTOFF: float = 1e-14
# Weight outside the sector tolerated after a prologue
SECTOR_LEAKAGE: float = 1e-10


def gate_matrix(op: GateOp) -> np.ndarray:
    """Return the unitary of ``op``; two-qubit matrices use index 2·bit_a + bit_b."""
    if op.kind == GateKind.X:
        return np.array([[0, 1], [1, 0]], dtype=complex)
    if op.kind == GateKind.RY:
        c, s = math.cos(op.angles[0] / 2), math.sin(op.angles[0] / 2)
        return np.array([[c, -s], [s, c]], dtype=complex)
    if op.kind == GateKind.RZ:
        phase = np.exp(0.5j * op.angles[0])
        return np.diag([1 / phase, phase])
    if op.kind == GateKind.CNOT:
        return np.array(
            [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
        )
    if op.kind == GateKind.XXZ:
        theta_i, theta_j = op.angles
        outer = np.exp(-0.5j * theta_j)
        inner = np.exp(0.5j * theta_j)
        c, s = math.cos(theta_i), math.sin(theta_i)
        return np.array(
            [
                [outer, 0, 0, 0],
                [0, inner * c, -1j * inner * s, 0],
                [0, -1j * inner * s, inner * c, 0],
                [0, 0, 0, outer],
            ],
            dtype=complex,
        )
    raise InvalidInput(f"{op.kind.value} has no matrix.")


@dataclass(eq=False)
class QuantumStateFull:
    """All ``2^n`` amplitudes of ``n`` qubits."""

    num_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    @staticmethod
    def zero(num_qubits: int) -> QuantumStateFull:
        amplitudes = np.zeros(1 << num_qubits, dtype=complex)
        amplitudes[0] = 1
        return QuantumStateFull(num_qubits, amplitudes)

    @staticmethod
    def from_single_particle(state: SingleParticleState) -> QuantumStateFull:
        n = state.num_sites
        amplitudes = np.zeros(1 << n, dtype=complex)
        amplitudes[1 << np.arange(n)] = state.amplitudes
        return QuantumStateFull(n, amplitudes)

    def copy(self) -> QuantumStateFull:
        return QuantumStateFull(self.num_qubits, self.amplitudes.copy())

    def basis(self) -> np.ndarray:
        return np.arange(1 << self.num_qubits, dtype=np.int64)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def one_hot_amplitudes(self) -> np.ndarray:
        return self.amplitudes[1 << np.arange(self.num_qubits)]

    def _axis(self, qubit: int) -> int:
        return self.num_qubits - 1 - qubit

    def apply_unitary(self, op: GateOp) -> None:
        matrix = gate_matrix(op)
        tensor = self.amplitudes.reshape([2] * self.num_qubits)
        if len(op.qubits) == 1:
            axis = self._axis(op.qubits[0])
            tensor = np.moveaxis(np.tensordot(matrix, tensor, axes=([1], [axis])), 0, axis)
        else:
            axes = [self._axis(q) for q in op.qubits]
            tensor = np.tensordot(matrix.reshape(2, 2, 2, 2), tensor, axes=([2, 3], axes))
            tensor = np.moveaxis(tensor, [0, 1], axes)
        self.amplitudes = np.ascontiguousarray(tensor).reshape(-1)

    def measure(self, qubit: int, generator: np.random.Generator) -> int:
        mask = (self.basis() >> qubit) & 1
        p_one = float(np.sum(self.probabilities()[mask == 1]))
        outcome = int(generator.random() < p_one)
        keep = mask == outcome
        self.amplitudes = np.where(keep, self.amplitudes, 0)
        self.amplitudes /= np.linalg.norm(self.amplitudes)
        return outcome


class SectorBasis:
    """Sorted basis of ``n``-bit strings with exactly ``n_e`` ones."""

    def __init__(self, num_qubits: int, excitations: int):
        if not 0 <= excitations <= num_qubits:
            raise InvalidInput(f"Cannot place {excitations} excitations on {num_qubits} qubits.")
        if num_qubits > 62:
            raise InvalidInput("Sector basis supports at most 62 qubits.")
        self.num_qubits = num_qubits
        self.excitations = excitations
        states = [
            sum(1 << q for q in occupied)
            for occupied in combinations(range(num_qubits), excitations)
        ]
        self.states = np.array(sorted(states), dtype=np.int64)
        self._pairs: dict[tuple[int, int], tuple[np.ndarray, np.ndarray, np.ndarray]] = {}

    def __len__(self) -> int:
        return len(self.states)

    def __ring_key__(self) -> str:
        return f"{self.num_qubits}:{self.excitations}"

    def index(self, states: np.ndarray | int) -> np.ndarray:
        """Positions of basis ``states``; every state must be in the sector."""
        positions = np.searchsorted(self.states, states)
        return positions

    def contains(self, state: int) -> bool:
        position = int(np.searchsorted(self.states, state))
        return position < len(self.states) and int(self.states[position]) == state

    def bits(self, qubit: int) -> np.ndarray:
        return (self.states >> qubit) & 1

    def pair(self, a: int, b: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Return ``(aligned, flipped, partner)`` for the qubit pair ``(a, b)``.

        ``aligned`` masks states where the two bits agree, ``flipped`` those
        where they differ, and ``partner[i]`` is the position of state ``i``
        with both bits inverted (meaningful where ``flipped``).
        """
        key = (min(a, b), max(a, b))
        if key not in self._pairs:
            bits_a, bits_b = self.bits(a), self.bits(b)
            flipped = bits_a != bits_b
            partner = np.zeros(len(self.states), dtype=np.int64)
            partner[flipped] = self.index(self.states[flipped] ^ ((1 << a) | (1 << b)))
            self._pairs[key] = (~flipped, flipped, partner)
        return self._pairs[key]


@ring.lru()
def sector_basis(num_qubits: int, excitations: int) -> SectorBasis:
    return SectorBasis(num_qubits, excitations)


@dataclass(eq=False)
class QuantumStateSector:
    """Amplitudes over the fixed-excitation basis of :class:`SectorBasis`."""

    basis_set: SectorBasis
    amplitudes: np.ndarray = field(repr=False)

    @property
    def num_qubits(self) -> int:
        return self.basis_set.num_qubits

    @property
    def excitations(self) -> int:
        return self.basis_set.excitations

    @staticmethod
    def from_single_particle(state: SingleParticleState) -> QuantumStateSector:
        # One-hot basis states 1 << q sort in qubit order
        return QuantumStateSector(sector_basis(state.num_sites, 1), state.amplitudes.copy())

    @staticmethod
    def from_amplitudes(
        num_qubits: int, excitations: int, amplitudes: np.ndarray
    ) -> QuantumStateSector:
        basis_set = sector_basis(num_qubits, excitations)
        if len(amplitudes) != len(basis_set):
            raise InvalidInput(
                f"Expected {len(basis_set)} sector amplitudes, got {len(amplitudes)}."
            )
        return QuantumStateSector(basis_set, np.asarray(amplitudes, dtype=complex).copy())

    def copy(self) -> QuantumStateSector:
        return QuantumStateSector(self.basis_set, self.amplitudes.copy())

    def basis(self) -> np.ndarray:
        return self.basis_set.states

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def to_single_particle(self) -> SingleParticleState:
        if self.excitations != 1:
            raise InvalidInput("Only one-excitation states map to single-particle states.")
        return SingleParticleState.normalized(self.amplitudes)

    def to_full(self) -> QuantumStateFull:
        amplitudes = np.zeros(1 << self.num_qubits, dtype=complex)
        amplitudes[self.basis_set.states] = self.amplitudes
        return QuantumStateFull(self.num_qubits, amplitudes)

    def apply_unitary(self, op: GateOp, op_index: int) -> None:
        if op.kind == GateKind.RZ:
            bits = self.basis_set.bits(op.qubits[0])
            phase = np.exp(0.5j * op.angles[0])
            self.amplitudes *= np.where(bits == 1, phase, 1 / phase)
        elif op.kind == GateKind.XXZ:
            theta_i, theta_j = op.angles
            aligned, flipped, partner = self.basis_set.pair(*op.qubits)
            updated = self.amplitudes.copy()
            updated[aligned] *= np.exp(-0.5j * theta_j)
            updated[flipped] = np.exp(0.5j * theta_j) * (
                math.cos(theta_i) * self.amplitudes[flipped]
                - 1j * math.sin(theta_i) * self.amplitudes[partner[flipped]]
            )
            self.amplitudes = updated
        else:
            raise SectorViolation(op_index, op.kind.value)

    def measure(self, qubit: int, generator: np.random.Generator) -> int:
        bits = self.basis_set.bits(qubit)
        p_one = float(np.sum(self.probabilities()[bits == 1]))
        outcome = int(generator.random() < p_one)
        self.amplitudes = np.where(bits == outcome, self.amplitudes, 0)
        self.amplitudes /= np.linalg.norm(self.amplitudes)
        return outcome


class _SparseState:
    """Basis index → amplitude map used to run state-preparation prologues."""

    def __init__(self, amplitudes: dict[int, complex]):
        self.amplitudes = amplitudes

    def apply_unitary(self, op: GateOp) -> None:
        matrix = gate_matrix(op)
        updated: dict[int, complex] = {}
        if len(op.qubits) == 1:
            mask = 1 << op.qubits[0]
            for state, amplitude in self.amplitudes.items():
                bit = int(bool(state & mask))
                for out in (0, 1):
                    coefficient = matrix[out, bit]
                    if coefficient != 0:
                        target = (state | mask) if out else (state & ~mask)
                        updated[target] = updated.get(target, 0) + coefficient * amplitude
        else:
            a, b = op.qubits
            mask_a, mask_b = 1 << a, 1 << b
            for state, amplitude in self.amplitudes.items():
                column = 2 * int(bool(state & mask_a)) + int(bool(state & mask_b))
                base = state & ~(mask_a | mask_b)
                for out in range(4):
                    coefficient = matrix[out, column]
                    if coefficient != 0:
                        target = base | (mask_a if out & 2 else 0) | (mask_b if out & 1 else 0)
                        updated[target] = updated.get(target, 0) + coefficient * amplitude
        self.amplitudes = {s: a for s, a in updated.items() if abs(a) > SPARSE_CUTOFF}

    def measure(self, qubit: int, generator: np.random.Generator) -> int:
        mask = 1 << qubit
        p_one = math.fsum(abs(a) ** 2 for s, a in self.amplitudes.items() if s & mask)
        outcome = int(generator.random() < p_one)
        kept = {s: a for s, a in self.amplitudes.items() if bool(s & mask) == bool(outcome)}
        norm = math.sqrt(math.fsum(abs(a) ** 2 for a in kept.values()))
        self.amplitudes = {s: a / norm for s, a in kept.items()}
        return outcome


@dataclass
class ExecutionResult:
    state: QuantumStateFull | QuantumStateSector
    clbits: list[int] = field(default_factory=list)


def _run(
    ops: Sequence[GateOp],
    state: QuantumStateFull | QuantumStateSector | _SparseState,
    clbits: list[int],
    generator: np.random.Generator,
    offset: int,
) -> None:
    for position, op in enumerate(ops):
        index = offset + position
        if op.kind == GateKind.MEASURE:
            assert op.clbit is not None
            clbits[op.clbit] = state.measure(op.qubits[0], generator)
            continue
        if op.kind == GateKind.IF:
            assert op.clbit is not None and op.inner is not None
            if clbits[op.clbit] != 1:
                continue
            op = op.inner
        if isinstance(state, QuantumStateSector):
            state.apply_unitary(op, index)
        else:
            state.apply_unitary(op)
        _trace(f"op #{index} {op.dumps()}")


def _run_sector(
    circuit: Circuit,
    initial: QuantumStateSector | None,
    excitations: int,
    clbits: list[int],
    generator: np.random.Generator,
) -> QuantumStateSector:
    if initial is not None:
        excitations = initial.excitations
    basis_set = sector_basis(circuit.num_qubits, excitations)

    if circuit.prologue == 0:
        if initial is None:
            raise InvalidInput(
                "The sector backend needs an initial sector state or a preparation prologue."
            )
        state = initial.copy()
    else:
        if initial is None:
            sparse = _SparseState({0: 1 + 0j})
        else:
            sparse = _SparseState(
                {int(s): complex(a) for s, a in zip(initial.basis(), initial.amplitudes) if a != 0}
            )
        _run(circuit.ops[: circuit.prologue], sparse, clbits, generator, 0)

        amplitudes = np.zeros(len(basis_set), dtype=complex)
        leakage: float = 0.0
        for s, a in sparse.amplitudes.items():
            if s.bit_count() == excitations:
                amplitudes[int(basis_set.index(s))] = a
            else:
                leakage += abs(a) ** 2
        if leakage > SECTOR_LEAKAGE:
            raise SectorViolation(circuit.prologue - 1, "prologue")
        state = QuantumStateSector(basis_set, amplitudes / np.linalg.norm(amplitudes))

    _run(circuit.ops[circuit.prologue :], state, clbits, generator, circuit.prologue)
    return state


def apply(
    circuit: Circuit,
    initial: QuantumStateFull | QuantumStateSector | None = None,
    *,
    backend: str = "sector",
    excitations: int = 1,
    seed: int = 0,
    generator: np.random.Generator | None = None,
) -> ExecutionResult:
    """Run ``circuit`` and return the final state and the classical bits.

    Without ``initial`` the circuit starts from ``|0…0⟩``; the sector
    backend then requires a prologue that lands in the ``excitations``
    sector. Measurements draw from ``generator`` or from the ``measure``
    stream of ``seed``.
    """
    if generator is None:
        generator = rng.generator(seed, "measure", 0)
    clbits: list[int] = [0] * circuit.num_clbits

    if backend == "full":
        if isinstance(initial, QuantumStateSector):
            initial = initial.to_full()
        state: QuantumStateFull | QuantumStateSector
        state = QuantumStateFull.zero(circuit.num_qubits) if initial is None else initial.copy()
        if state.num_qubits != circuit.num_qubits:
            raise InvalidInput("Circuit and state have different numbers of qubits.")
        _run(circuit.ops, state, clbits, generator, 0)
        return ExecutionResult(state, clbits)

    if backend == "sector":
        if isinstance(initial, QuantumStateFull):
            raise InvalidInput("The sector backend cannot start from a full state.")
        if initial is not None and initial.num_qubits != circuit.num_qubits:
            raise InvalidInput("Circuit and state have different numbers of qubits.")
        state = _run_sector(circuit, initial, excitations, clbits, generator)
        return ExecutionResult(state, clbits)

    raise InvalidInput(f"Unknown backend {backend!r}, use 'full' or 'sector'.")


def sample(
    state: QuantumStateFull | QuantumStateSector | SingleParticleState,
    n_shots: int,
    seed: int,
    *,
    index: int = 0,
) -> ShotSet:
    """Draw ``n_shots`` computational-basis measurements (multinomial)."""
    if n_shots < 0:
        raise InvalidInput("Number of shots cannot be negative.")
    if isinstance(state, SingleParticleState):
        state = QuantumStateSector.from_single_particle(state)
    probabilities = state.probabilities()
    probabilities = probabilities / probabilities.sum()
    counts = rng.generator(seed, "shots", index).multinomial(n_shots, probabilities)
    return ShotSet.from_arrays(state.num_qubits, state.basis(), counts)
