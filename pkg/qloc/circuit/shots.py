from __future__ import annotations

import json
from collections.abc import Mapping
from dataclasses import dataclass, field

import numpy as np

from qloc.exceptions import InvalidInput


@dataclass(frozen=True, eq=False)
class ShotSet:
    """Measured bitstrings with their counts.

    Bitstrings are stored as integers where bit ``q`` is qubit ``q``. The
    JSON form writes qubit 0 as the rightmost character.
    """

    num_qubits: int
    records: Mapping[int, int] = field(repr=False)

    def __post_init__(self):
        if self.num_qubits < 1:
            raise InvalidInput("A shot set needs at least one qubit.")
        limit = 1 << self.num_qubits
        records: dict[int, int] = {}
        for bits, count in sorted(self.records.items()):
            bits, count = int(bits), int(count)
            if not 0 <= bits < limit:
                raise InvalidInput(f"Bitstring {bits} has more than {self.num_qubits} bits.")
            if count < 1:
                raise InvalidInput("Shot counts must be positive.")
            records[bits] = count
        object.__setattr__(self, "records", records)

    @property
    def total(self) -> int:
        return sum(self.records.values())

    def __len__(self) -> int:
        return len(self.records)

    def bitstrings(self) -> np.ndarray:
        return np.fromiter(self.records.keys(), dtype=np.int64, count=len(self.records))

    def counts(self) -> np.ndarray:
        return np.fromiter(self.records.values(), dtype=np.int64, count=len(self.records))

    def bit_matrix(self) -> np.ndarray:
        """Return a ``(distinct strings, qubits)`` 0/1 matrix."""
        qubits = np.arange(self.num_qubits, dtype=np.int64)
        return ((self.bitstrings()[:, None] >> qubits[None, :]) & 1).astype(np.int8)

    def hamming_weights(self) -> np.ndarray:
        return self.bit_matrix().sum(axis=1)

    def one_hot_distribution(self) -> np.ndarray:
        """Frequency of each one-hot string e_n among all shots (not renormalized)."""
        distribution = np.zeros(self.num_qubits)
        for bits, count in self.records.items():
            if bits and bits & (bits - 1) == 0:
                distribution[bits.bit_length() - 1] += count
        return distribution / max(self.total, 1)

    @staticmethod
    def from_arrays(num_qubits: int, bitstrings: np.ndarray, counts: np.ndarray) -> ShotSet:
        records: dict[int, int] = {}
        for bits, count in zip(bitstrings.tolist(), counts.tolist()):
            if count > 0:
                records[int(bits)] = records.get(int(bits), 0) + int(count)
        return ShotSet(num_qubits=num_qubits, records=records)

    def to_bitstring(self, bits: int) -> str:
        return format(bits, f"0{self.num_qubits}b")

    def dump(self) -> dict[str, int]:
        return {self.to_bitstring(bits): count for bits, count in self.records.items()}

    def to_json(self) -> str:
        return json.dumps(self.dump(), sort_keys=True, indent=2)

    @staticmethod
    def from_dict(data: Mapping[str, int]) -> ShotSet:
        if not data:
            raise InvalidInput("Shot file has no records.")
        lengths = {len(bitstring) for bitstring in data}
        if len(lengths) != 1:
            raise InvalidInput("All bitstrings must have the same length.")
        records: dict[int, int] = {}
        for bitstring, count in data.items():
            if set(bitstring) - {"0", "1"}:
                raise InvalidInput(f"{bitstring!r} is not a bitstring.")
            records[int(bitstring, 2)] = int(count)
        return ShotSet(num_qubits=lengths.pop(), records=records)

    @staticmethod
    def from_json(text: str) -> ShotSet:
        return ShotSet.from_dict(json.loads(text))
