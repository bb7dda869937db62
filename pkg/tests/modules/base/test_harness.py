import csv
import json

import pytest

from qloc.exceptions import ManifestError, UnknownFigure
from qloc.harness import ExperimentManifest, manifest_hash

MANIFEST = {
    "id": "small",
    "lattice": {"Lx": 4, "Ly": 4},
    "W": 1.0,
    "wavepackets": [{"label": "packet", "k0": ["0.5pi", 0], "sigma_p": [0.5, 0.5]}],
    "dt": 0.25,
    "times": [0, 0.25],
    "shots": 500,
    "master_seed": 1,
    "epsilon": 0.02,
}


def test_pipeline(app, tmp_path, capsys):
    path = tmp_path / "small.json"
    path.write_text(json.dumps(MANIFEST), encoding="utf-8")
    assert 0 == app.run(["pipeline", str(path), "--out", str(tmp_path / "out")])

    digest = manifest_hash(ExperimentManifest.load(path))
    directory = tmp_path / "out" / digest
    with (directory / "pipeline.csv").open(encoding="utf-8") as handle:
        rows = list(csv.DictReader(handle))
    assert 2 * 3 == len(rows)
    metadata = json.loads((directory / "manifest.json").read_text(encoding="utf-8"))
    assert digest == metadata["manifest_hash"]
    assert "MLE" in capsys.readouterr().out


def test_pipeline_bad_manifest(app, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{}", encoding="utf-8")
    with pytest.raises(ManifestError):
        app.run(["pipeline", str(path)])


def test_figure_list(app, capsys):
    app.run(["figure"])
    output = capsys.readouterr().out
    assert "table2" in output
    assert "fig8a" in output


def test_figure(app, tmp_path, capsys):
    app.run(["figure", "table2", "--preset", "smoke", "--out", str(tmp_path)])
    output = capsys.readouterr().out
    assert str(tmp_path / "table2-smoke" / "mcmff2.csv") in output


def test_figure_preset_from_config(app, tmp_path):
    app.run(["config", "preset", "smoke"])
    app.run(["figure", "table2", "--out", str(tmp_path)])
    assert (tmp_path / "table2-smoke").is_dir()


def test_unknown_figure(app):
    with pytest.raises(UnknownFigure):
        app.run(["figure", "fig42"])
