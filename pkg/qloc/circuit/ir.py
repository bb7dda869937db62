from __future__ import annotations

import enum
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field

from qloc.exceptions import CircuitFormatError, InvalidInput


class GateKind(str, enum.Enum):
    X = "X"
    RY = "RY"
    RZ = "RZ"
    CNOT = "CNOT"
    XXZ = "XXZ"
    MEASURE = "MEASURE"
    IF = "IF"


# Qubit and angle arity per unitary kind
_ARITY: dict[GateKind, tuple[int, int]] = {
    GateKind.X: (1, 0),
    GateKind.RY: (1, 1),
    GateKind.RZ: (1, 1),
    GateKind.CNOT: (2, 0),
    GateKind.XXZ: (2, 2),
}


@dataclass(frozen=True)
class GateOp:
    """One instruction of a :class:`Circuit`.

    ``RY(θ) = exp(−iθY/2)``, ``RZ(φ) = exp(−iφZ/2)`` and
    ``XXZ(θi, θj) = exp(−(i/2)[θi(XX+YY) + θj ZZ])``. ``CNOT`` lists the
    control first. ``MEASURE`` writes qubit ``qubits[0]`` into ``clbit``;
    ``IF`` applies ``inner`` when ``clbit`` holds 1.
    """

    kind: GateKind
    qubits: tuple[int, ...] = ()
    angles: tuple[float, ...] = ()
    clbit: int | None = None
    inner: GateOp | None = None

    def __post_init__(self):
        if self.kind in _ARITY:
            n_qubits, n_angles = _ARITY[self.kind]
            if len(self.qubits) != n_qubits or len(self.angles) != n_angles:
                raise InvalidInput(
                    f"{self.kind.value} takes {n_qubits} qubits and {n_angles} angles."
                )
            if n_qubits == 2 and self.qubits[0] == self.qubits[1]:
                raise InvalidInput(f"{self.kind.value} needs two distinct qubits.")
        elif self.kind == GateKind.MEASURE:
            if len(self.qubits) != 1 or self.clbit is None:
                raise InvalidInput("MEASURE takes one qubit and one clbit.")
        elif self.kind == GateKind.IF:
            if self.clbit is None or self.inner is None:
                raise InvalidInput("IF needs a clbit and an inner op.")
            if self.inner.kind in (GateKind.MEASURE, GateKind.IF):
                raise InvalidInput("IF may only wrap a unitary op.")

    @staticmethod
    def x(qubit: int) -> GateOp:
        return GateOp(GateKind.X, (qubit,))

    @staticmethod
    def ry(qubit: int, theta: float) -> GateOp:
        return GateOp(GateKind.RY, (qubit,), (float(theta),))

    @staticmethod
    def rz(qubit: int, phi: float) -> GateOp:
        return GateOp(GateKind.RZ, (qubit,), (float(phi),))

    @staticmethod
    def cnot(control: int, target: int) -> GateOp:
        return GateOp(GateKind.CNOT, (control, target))

    @staticmethod
    def xxz(a: int, b: int, theta_i: float, theta_j: float) -> GateOp:
        return GateOp(GateKind.XXZ, (a, b), (float(theta_i), float(theta_j)))

    @staticmethod
    def measure(qubit: int, clbit: int) -> GateOp:
        return GateOp(GateKind.MEASURE, (qubit,), clbit=clbit)

    @staticmethod
    def controlled(clbit: int, inner: GateOp) -> GateOp:
        return GateOp(GateKind.IF, clbit=clbit, inner=inner)

    @property
    def all_qubits(self) -> tuple[int, ...]:
        if self.inner is not None:
            return self.inner.qubits
        return self.qubits

    @property
    def two_qubit_weight(self) -> int:
        """Number of two-qubit gates this op compiles to."""
        if self.kind == GateKind.IF:
            assert self.inner is not None
            return self.inner.two_qubit_weight
        if self.kind == GateKind.CNOT:
            return 1
        if self.kind == GateKind.XXZ:
            return 2 if self.angles[1] == 0 else 3
        return 0

    def dumps(self) -> str:
        if self.kind == GateKind.IF:
            assert self.inner is not None
            return f"IF {self.clbit} {self.inner.dumps()}"
        if self.kind == GateKind.MEASURE:
            return f"MEASURE {self.qubits[0]} {self.clbit}"
        stubs: list[str] = [self.kind.value]
        stubs += [str(q) for q in self.qubits]
        stubs += [format(a, ".17g") for a in self.angles]
        return " ".join(stubs)


@dataclass
class Circuit:
    """Ordered gate list on ``num_qubits`` qubits and ``num_clbits`` classical bits.

    The first ``prologue`` ops prepare the initial state; the sector backend
    runs them outside the excitation sector.
    """

    num_qubits: int
    ops: list[GateOp] = field(default_factory=list)
    num_clbits: int = 0
    prologue: int = 0

    def __post_init__(self):
        if self.num_qubits < 1:
            raise InvalidInput("A circuit needs at least one qubit.")
        if self.num_clbits < 0:
            raise InvalidInput("Number of clbits cannot be negative.")
        ops, self.ops = self.ops, []
        self._written: set[int] = set()
        for op in ops:
            self.append(op)
        if not 0 <= self.prologue <= len(self.ops):
            raise InvalidInput(f"Prologue of {self.prologue} ops exceeds the circuit.")

    def __len__(self) -> int:
        return len(self.ops)

    def __iter__(self) -> Iterator[GateOp]:
        return iter(self.ops)

    def append(self, op: GateOp) -> Circuit:
        """Append ``op`` after checking its qubit and clbit indices."""
        for qubit in op.all_qubits:
            if not 0 <= qubit < self.num_qubits:
                raise InvalidInput(
                    f"Qubit {qubit} is out of range for {self.num_qubits} qubits."
                )
        if op.clbit is not None and not 0 <= op.clbit < self.num_clbits:
            raise InvalidInput(f"Clbit {op.clbit} is out of range.")
        if op.kind == GateKind.IF and op.clbit not in self._written:
            raise InvalidInput(f"Clbit {op.clbit} is read before it is measured.")
        if op.kind == GateKind.MEASURE:
            assert op.clbit is not None
            self._written.add(op.clbit)
        self.ops.append(op)
        return self

    def extend(self, ops: Iterable[GateOp]) -> Circuit:
        for op in ops:
            self.append(op)
        return self

    def then(self, other: Circuit) -> Circuit:
        """Return this circuit followed by ``other``, keeping this prologue."""
        if other.num_qubits != self.num_qubits:
            raise InvalidInput("Circuits act on different numbers of qubits.")
        result = Circuit(
            num_qubits=self.num_qubits,
            ops=list(self.ops),
            num_clbits=max(self.num_clbits, other.num_clbits),
            prologue=self.prologue,
        )
        return result.extend(other.ops)

    def two_qubit_gate_count(self) -> int:
        return sum(op.two_qubit_weight for op in self.ops)

    def two_qubit_depth(self) -> int:
        """Longest chain of two-qubit gates through any qubit."""
        depth: list[int] = [0] * self.num_qubits
        for op in self.ops:
            weight = op.two_qubit_weight
            if weight == 0:
                continue
            a, b = op.all_qubits
            layer = max(depth[a], depth[b]) + weight
            depth[a] = depth[b] = layer
        return max(depth)

    def dumps(self) -> str:
        lines: list[str] = [f"CIRCUIT {self.num_qubits} {self.num_clbits} {self.prologue}"]
        lines += [op.dumps() for op in self.ops]
        return "\n".join(lines) + "\n"


def two_qubit_gate_count(circuit: Circuit) -> int:
    return circuit.two_qubit_gate_count()


def two_qubit_depth(circuit: Circuit) -> int:
    return circuit.two_qubit_depth()


def dumps(circuit: Circuit) -> str:
    return circuit.dumps()


def _parse_op(stubs: list[str], line_no: int) -> GateOp:
    try:
        kind = GateKind(stubs[0])
    except ValueError:
        raise CircuitFormatError(line_no, f"unknown gate kind {stubs[0]!r}") from None

    try:
        if kind == GateKind.IF:
            return GateOp.controlled(int(stubs[1]), _parse_op(stubs[2:], line_no))
        if kind == GateKind.MEASURE:
            if len(stubs) != 3:
                raise CircuitFormatError(line_no, "MEASURE takes a qubit and a clbit")
            return GateOp.measure(int(stubs[1]), int(stubs[2]))

        n_qubits, n_angles = _ARITY[kind]
        if len(stubs) != 1 + n_qubits + n_angles:
            raise CircuitFormatError(
                line_no, f"{kind.value} takes {n_qubits} qubits and {n_angles} angles"
            )
        qubits = tuple(int(s) for s in stubs[1 : 1 + n_qubits])
        angles = tuple(float(s) for s in stubs[1 + n_qubits :])
        return GateOp(kind, qubits, angles)
    except (ValueError, IndexError) as exc:
        raise CircuitFormatError(line_no, str(exc)) from None
    except InvalidInput as exc:
        raise CircuitFormatError(line_no, exc.message) from None


def loads(text: str) -> Circuit:
    """Parse the line format written by :func:`dumps`."""
    lines = [(i + 1, line.split()) for i, line in enumerate(text.splitlines())]
    lines = [(i, stubs) for i, stubs in lines if stubs and not stubs[0].startswith("#")]
    if not lines or lines[0][1][0] != "CIRCUIT" or len(lines[0][1]) != 4:
        raise CircuitFormatError(1, "missing 'CIRCUIT <qubits> <clbits> <prologue>' header")

    try:
        num_qubits, num_clbits, prologue = (int(s) for s in lines[0][1][1:])
    except ValueError as exc:
        raise CircuitFormatError(lines[0][0], str(exc)) from None

    circuit = Circuit(num_qubits=num_qubits, num_clbits=num_clbits)
    for line_no, stubs in lines[1:]:
        try:
            circuit.append(_parse_op(stubs, line_no))
        except InvalidInput as exc:
            raise CircuitFormatError(line_no, exc.message) from None

    if not 0 <= prologue <= len(circuit):
        raise CircuitFormatError(lines[0][0], "prologue is longer than the circuit")
    circuit.prologue = prologue
    return circuit
