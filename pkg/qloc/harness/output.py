from __future__ import annotations

import csv
import hashlib
import json
from collections.abc import Iterable
from pathlib import Path
from typing import Any

import git

from qloc import logger
from qloc.storage import RunRecord
from qloc.utils import time as time_utils

run_log = logger.Run.logger()


def code_commit() -> str:
    """Commit hash of the checkout the package runs from, or ``none``."""
    try:
        repo = git.repo.base.Repo(str(Path(__file__).parent), search_parent_directories=True)
        return repo.head.commit.hexsha
    except (git.exc.InvalidGitRepositoryError, git.exc.NoSuchPathError, ValueError):
        return "none"


class OutputWriter:
    """Writes ``<root>/<experiment_id>/<name>.csv`` and ``<name>.json`` side by side."""

    def __init__(self, root: str | Path, experiment_id: str):
        self.experiment_id = experiment_id
        self.directory = Path(root) / experiment_id
        self.directory.mkdir(parents=True, exist_ok=True)
        self.commit = code_commit()
        self.written: list[Path] = []

    def write_csv(self, name: str, rows: Iterable[dict[str, Any]]) -> Path:
        rows = list(rows)
        path = self.directory / f"{name}.csv"
        header: list[str] = []
        for row in rows:
            header += [key for key in row if key not in header]
        with path.open("w", encoding="utf-8", newline="") as handle:
            writer = csv.DictWriter(handle, fieldnames=header, lineterminator="\n")
            writer.writeheader()
            for row in rows:
                writer.writerow({key: _cell(value) for key, value in row.items()})
        self.written.append(path)
        return path

    def write_json(self, name: str, metadata: dict[str, Any]) -> Path:
        """Write metadata; ``created`` is the only field that differs between reruns."""
        path = self.directory / f"{name}.json"
        document = {
            **metadata,
            "experiment_id": self.experiment_id,
            "commit": self.commit,
            "created": time_utils.format_created(time_utils.now()),
        }
        with path.open("w", encoding="utf-8") as handle:
            json.dump(document, handle, sort_keys=True, indent=2, default=_json_default)
            handle.write("\n")
        self.written.append(path)
        return path

    def record(self, kind: str, name: str, master_seed: int, workers: int) -> RunRecord:
        run_log.info(
            self.experiment_id,
            f"{kind} {name} wrote {len(self.written)} files to {self.directory}.",
        )
        return RunRecord.add(
            experiment_id=self.experiment_id,
            kind=kind,
            name=name,
            master_seed=master_seed,
            workers=workers,
            output_dir=str(self.directory),
            commit=self.commit,
        )


def _cell(value: Any) -> Any:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(float(value))
    return value


def _json_default(value: Any) -> Any:
    if hasattr(value, "tolist"):
        return value.tolist()
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def run_id(kind: str, parameters: dict[str, Any]) -> str:
    """Directory name of an ad-hoc command run, stable for equal parameters."""
    text = json.dumps(parameters, sort_keys=True, separators=(",", ":"), default=_json_default)
    return f"{kind}-{hashlib.sha256(text.encode('utf-8')).hexdigest()[:12]}"
