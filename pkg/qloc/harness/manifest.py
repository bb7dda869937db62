"""Experiment manifests: one JSON document per pipeline run."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from qloc.anderson import Lattice2D, WavepacketSpec
from qloc.exceptions import InvalidInput, ManifestError
from qloc.utils.text import parse_angle

# Fields that name the run rather than describe it
_PROVENANCE_FIELDS: tuple[str, ...] = ("id", "output")
METHODS: tuple[str, ...] = ("ps", "mle")


def _angle(value: float | str) -> float:
    """Momenta may be written as numbers or as multiples of pi (``"0.5pi"``)."""
    return parse_angle(value) if isinstance(value, str) else float(value)


@dataclass(frozen=True)
class LabelledWavepacket:
    label: str
    spec: WavepacketSpec

    def dump(self) -> dict:
        return {"label": self.label, **self.spec.dump()}


@dataclass(frozen=True)
class ExperimentManifest:
    """Parameters of one end-to-end Anderson pipeline run."""

    id: str
    lattice: Lattice2D
    W: float
    wavepackets: tuple[LabelledWavepacket, ...]
    dt: float
    times: tuple[float, ...]
    shots: int
    master_seed: int
    epsilon: float | None = None
    gate_error: float | None = None
    methods: tuple[str, ...] = METHODS
    bootstrap: int = 0
    truncate_times: tuple[float, ...] = (0.0, 1.0)
    disorder_index: int = 0
    output: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if (self.epsilon is None) == (self.gate_error is None):
            raise InvalidInput("Give exactly one of 'epsilon' and 'gate_error'.")
        if self.shots < 1:
            raise InvalidInput("At least one shot is required.")
        if not self.wavepackets:
            raise InvalidInput("At least one wavepacket is required.")
        labels = [wavepacket.label for wavepacket in self.wavepackets]
        if len(set(labels)) != len(labels):
            raise InvalidInput(f"Wavepacket labels must be unique, got {labels}.")
        if unknown := set(self.methods) - set(METHODS):
            raise InvalidInput(f"Unknown methods {sorted(unknown)}, use {', '.join(METHODS)}.")
        if self.bootstrap and self.bootstrap < 100:
            raise InvalidInput("Bootstrap needs 0 (disabled) or at least 100 resamples.")
        if self.master_seed < 0:
            raise InvalidInput("Master seed must be nonnegative.")

    @staticmethod
    def from_dict(data: dict[str, Any], path: str = "<manifest>") -> ExperimentManifest:
        try:
            lattice = data["lattice"]
            wavepackets = tuple(
                LabelledWavepacket(
                    label=str(item["label"]),
                    spec=WavepacketSpec(
                        k0=tuple(_angle(k) for k in item["k0"]),
                        sigma_p=tuple(item["sigma_p"]),
                        x0=tuple(item.get("x0", ())),
                        trunc_threshold=float(item.get("trunc_threshold", 0.0)),
                    ),
                )
                for item in data["wavepackets"]
            )
            return ExperimentManifest(
                id=str(data.get("id", Path(path).stem)),
                lattice=Lattice2D(int(lattice["Lx"]), int(lattice["Ly"])),
                W=float(data["W"]),
                wavepackets=wavepackets,
                dt=float(data["dt"]),
                times=tuple(float(t) for t in data["times"]),
                shots=int(data["shots"]),
                master_seed=int(data["master_seed"]),
                epsilon=None if data.get("epsilon") is None else float(data["epsilon"]),
                gate_error=None if data.get("gate_error") is None else float(data["gate_error"]),
                methods=tuple(data.get("methods", METHODS)),
                bootstrap=int(data.get("bootstrap", 0)),
                truncate_times=tuple(float(t) for t in data.get("truncate_times", (0.0, 1.0))),
                disorder_index=int(data.get("disorder_index", 0)),
                output=data.get("output"),
            )
        except KeyError as exc:
            raise ManifestError(path, f"missing field {exc.args[0]!r}") from None
        except (TypeError, ValueError) as exc:
            raise ManifestError(path, str(exc)) from None
        except InvalidInput as exc:
            raise ManifestError(path, exc.message) from None

    @staticmethod
    def loads(text: str, path: str = "<manifest>") -> ExperimentManifest:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ManifestError(path, f"invalid JSON: {exc.msg}") from None
        if not isinstance(data, dict):
            raise ManifestError(path, "the document must be a JSON object")
        return ExperimentManifest.from_dict(data, path)

    @staticmethod
    def load(path: str | Path) -> ExperimentManifest:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ManifestError(str(path), exc.strerror or str(exc)) from None
        return ExperimentManifest.loads(text, str(path))

    def dump(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "lattice": {"Lx": self.lattice.Lx, "Ly": self.lattice.Ly},
            "W": self.W,
            "wavepackets": [wavepacket.dump() for wavepacket in self.wavepackets],
            "dt": self.dt,
            "times": list(self.times),
            "shots": self.shots,
            "master_seed": self.master_seed,
            "epsilon": self.epsilon,
            "gate_error": self.gate_error,
            "methods": list(self.methods),
            "bootstrap": self.bootstrap,
            "truncate_times": list(self.truncate_times),
            "disorder_index": self.disorder_index,
            "output": self.output,
        }


def canonical_json(data: dict[str, Any]) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def manifest_hash(manifest: ExperimentManifest) -> str:
    """SHA-256 of the canonical physics parameters; the id and output paths are ignored."""
    physics = {k: v for k, v in manifest.dump().items() if k not in _PROVENANCE_FIELDS}
    return hashlib.sha256(canonical_json(physics).encode("utf-8")).hexdigest()
