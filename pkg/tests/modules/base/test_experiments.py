import csv
import json
import math

import pytest


def _rows(root, pattern: str) -> list[dict]:
    (path,) = root.glob(pattern)
    with path.open(encoding="utf-8") as handle:
        return list(csv.DictReader(handle))


def test_anderson_spectrum(app, tmp_path):
    app.run(
        ["anderson-spectrum", "--Lx", "4", "--realizations", "2", "--bins", "4",
         "--out", str(tmp_path)]
    )
    rows = _rows(tmp_path, "anderson-spectrum-*/ipr_vs_energy.csv")
    assert 4 == len(rows)


def test_anderson_dynamics(app, tmp_path, capsys):
    app.run(
        ["anderson-dynamics", "--Lx", "4", "--realizations", "3", "--times", "0,1",
         "--representative", "--out", str(tmp_path)]
    )
    rows = _rows(tmp_path, "anderson-dynamics-*/ipr_timeseries.csv")
    assert ["0.0", "1.0"] == [row["t"] for row in rows]
    assert "Mean IPR" in capsys.readouterr().out


def test_variance(app, tmp_path):
    app.run(["variance", "--dims", "32", "--realizations", "20", "--out", str(tmp_path)])
    (row,) = _rows(tmp_path, "variance-*/variance.csv")
    assert float(row["total"]) > 0
    assert float(row["empirical"]) > 0


def test_prep_benchmark(app, tmp_path):
    app.run(["prep-benchmark", "--sizes", "4", "--shots", "300", "--out", str(tmp_path)])
    rows = _rows(tmp_path, "prep-benchmark-*/benchmark.csv")
    assert ["unitary", "mcm-ff-1", "mcm-ff-2"] == [row["method"] for row in rows]


def test_xxz_dynamics_with_given_angles(app, tmp_path, capsys):
    app.run(
        ["xxz-dynamics", "--theta", "0,0,0,0", "--times", "0,0.5,1", "--out", str(tmp_path)]
    )
    rows = _rows(tmp_path, "xxz-dynamics-*/energy_density.csv")
    assert 3 == len(rows)
    totals = [sum(float(value) for key, value in row.items() if key != "t") for row in rows]
    assert totals[0] == pytest.approx(totals[-1], abs=1e-8)
    assert "Energy" in capsys.readouterr().out


@pytest.mark.slow
def test_xxz_train(app, tmp_path):
    app.run(["xxz-train", "--layers", "1", "--max-evals", "300", "--out", str(tmp_path)])
    trace = _rows(tmp_path, "xxz-train-*/trace.csv")
    assert float(trace[-1]["energy"]) <= float(trace[0]["energy"])


def test_xxz_train_flags(app, tmp_path, capsys):
    app.run(
        [
            "xxz-train",
            "--n", "10",
            "--delta", "0.5",
            "--k0", "0.25pi",
            "--sigma", "0.2",
            "--layers", "1",
            "--max-evals", "40",
            "--out", str(tmp_path),
        ]
    )
    (path,) = tmp_path.glob("xxz-train-*/xxz-train.json")
    metadata = json.loads(path.read_text(encoding="utf-8"))
    assert 10 == metadata["N"]
    assert 0.5 == metadata["delta"]
    assert 0.25 * math.pi == pytest.approx(metadata["wavepacket"]["k0"])
    assert 0.2 == metadata["wavepacket"]["sigma_p"]
    assert 1 == metadata["layers"]
    assert metadata["result"]["trace"]
    assert metadata["result"]["energy"] <= metadata["result"]["trace"][0]
    assert "Gap" in capsys.readouterr().out


def test_xxz_flags_keep_long_spelling(app, tmp_path):
    app.run(
        ["xxz-dynamics", "--N", "10", "--sigma-p", "0.2", "--theta", "0,0,0,0",
         "--layers", "1", "--times", "0", "--out", str(tmp_path)]
    )
    (path,) = tmp_path.glob("xxz-dynamics-*/xxz-dynamics.json")
    assert 10 == json.loads(path.read_text(encoding="utf-8"))["N"]
