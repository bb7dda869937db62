"""Log-depth amplitude trees preparing one-excitation states.

The support of the target is split recursively into a left half (first
⌈s/2⌉ sites) and a right half. Each split moves the right half's share of
the excitation from the first site of the left half to the first site of
the right half with a controlled rotation compiled as two CNOTs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from qloc.anderson import SingleParticleState
from qloc.circuit import Circuit, GateOp
from qloc.exceptions import InvalidInput


@dataclass(frozen=True)
class TreeNode:
    """Rotation moving weight ``cos²α`` from ``control`` to ``target``."""

    control: int
    target: int
    alpha: float

    def ops(self) -> list[GateOp]:
        return [
            GateOp.ry(self.target, self.alpha),
            GateOp.cnot(self.control, self.target),
            GateOp.ry(self.target, -self.alpha),
            GateOp.cnot(self.target, self.control),
        ]


@dataclass(frozen=True)
class AmplitudeTreePlan:
    num_qubits: int
    support: tuple[int, ...]
    node_angles: tuple[TreeNode, ...] = field(repr=False)
    phase_angles: tuple[float, ...] = field(repr=False)

    def __post_init__(self):
        if not self.support:
            raise InvalidInput("An amplitude tree needs at least one support site.")
        if len(self.phase_angles) != len(self.support):
            raise InvalidInput("Every support site needs a phase angle.")

    @staticmethod
    def from_state(target: SingleParticleState) -> AmplitudeTreePlan:
        support = tuple(int(n) for n in target.support())
        if not support:
            raise InvalidInput("Target state has no support.")
        weights = target.probabilities()

        nodes: list[TreeNode] = []

        def split(segment: tuple[int, ...]) -> None:
            if len(segment) < 2:
                return
            middle = math.ceil(len(segment) / 2)
            left, right = segment[:middle], segment[middle:]
            w_left = math.fsum(weights[n] for n in left)
            w_right = math.fsum(weights[n] for n in right)
            alpha = math.atan2(math.sqrt(w_left), math.sqrt(w_right))
            nodes.append(TreeNode(left[0], right[0], alpha))
            split(left)
            split(right)

        split(support)
        amplitudes = target.amplitudes[list(support)]
        phases = tuple(float(np.angle(c)) for c in amplitudes)
        return AmplitudeTreePlan(
            num_qubits=target.num_sites,
            support=support,
            node_angles=tuple(nodes),
            phase_angles=phases,
        )

    def ops(self, *, root: bool = True) -> list[GateOp]:
        """Return the gates; ``root=False`` assumes the root is already excited."""
        ops: list[GateOp] = [GateOp.x(self.support[0])] if root else []
        for node in self.node_angles:
            ops += node.ops()
        if len(self.support) > 1:
            ops += [
                GateOp.rz(site, phi)
                for site, phi in zip(self.support, self.phase_angles)
                if phi != 0
            ]
        return ops

    def circuit(self) -> Circuit:
        ops = self.ops()
        return Circuit(num_qubits=self.num_qubits, ops=ops, prologue=len(ops))


def synthesize_wavepacket_circuit(target: SingleParticleState) -> Circuit:
    """Return a circuit preparing ``target`` from ``|0…0⟩`` up to a global phase.

    The circuit is entirely prologue, so the sector backend can start from it.
    """
    return AmplitudeTreePlan.from_state(target).circuit()


def w_state(num_qubits: int) -> SingleParticleState:
    """Equal superposition of the ``num_qubits`` one-hot strings."""
    if num_qubits < 1:
        raise InvalidInput("A W state needs at least one qubit.")
    return SingleParticleState(np.full(num_qubits, 1 / math.sqrt(num_qubits), dtype=complex))
