import json

import pytest

from qloc.exceptions import EstimatorError, InvalidInput

KEYS = {"p_hat", "epsilon_hat", "ipr", "ipr_std", "survival_rate", "loglik", "iterations"}


def _result(root) -> dict:
    (path,) = root.glob("mitigate-*/mitigate.json")
    return json.loads(path.read_text(encoding="utf-8"))


def _shot_file(tmp_path, records: dict) -> str:
    path = tmp_path / "shots.json"
    path.write_text(json.dumps(records), encoding="utf-8")
    return str(path)


def test_mitigate_synthetic(app, tmp_path, capsys):
    app.run(
        [
            "mitigate",
            "--synthetic", "8",
            "--n-shots", "5000",
            "--epsilon", "0.05",
            "--out", str(tmp_path),
        ]
    )
    result = _result(tmp_path)
    assert KEYS <= set(result)
    assert "mle" == result["method"]
    assert 0.125 == pytest.approx(result["ipr"], abs=0.01)
    assert 0.05 == pytest.approx(result["epsilon_hat"], abs=0.015)
    assert result["iterations"] > 0
    assert result["tv_to_truth"] < 0.05
    assert 8 == len(result["p_hat"])
    assert "ε̂" in capsys.readouterr().out


def test_mitigate_ps_shot_file(app, tmp_path):
    path = _shot_file(tmp_path, {"0001": 60, "0010": 30, "0011": 10})
    app.run(
        [
            "mitigate",
            "--shots", path,
            "--method", "ps",
            "--ne", "1",
            "--bootstrap", "100",
            "--seed", "4",
            "--out", str(tmp_path),
        ]
    )
    result = _result(tmp_path)
    assert KEYS <= set(result)
    assert 0.9 == pytest.approx(result["survival_rate"])
    assert [2 / 3, 1 / 3, 0.0, 0.0] == pytest.approx(result["p_hat"])
    assert (2 / 3) ** 2 + (1 / 3) ** 2 == pytest.approx(result["ipr"])
    assert result["ipr_std"] > 0
    assert result["epsilon_hat"] is None
    assert result["loglik"] is None
    assert result["iterations"] is None
    assert 4 == result["master_seed"]


def test_mitigate_mle_shot_file(app, tmp_path):
    path = _shot_file(tmp_path, {"0001": 60, "0010": 30, "0011": 10})
    app.run(["mitigate", "--shots", path, "--method", "mle", "--out", str(tmp_path)])
    result = _result(tmp_path)
    assert 1.0 == pytest.approx(sum(result["p_hat"]))
    assert 0 <= result["epsilon_hat"] < 0.5
    assert result["loglik"] < 0
    assert result["ipr_std"] is None


@pytest.mark.parametrize(
    "argv",
    [
        ["mitigate"],
        ["mitigate", "--shots", "/nonexistent/shots.json"],
        ["mitigate", "--synthetic", "8", "--ne", "2"],
    ],
)
def test_mitigate_negative(app, argv: list):
    with pytest.raises(InvalidInput):
        app.run(argv)


def test_mitigate_unknown_method(app):
    with pytest.raises(SystemExit):
        app.run(["mitigate", "--synthetic", "8", "--method", "zne"])


def test_mitigate_ps_without_survivors(app, tmp_path):
    path = _shot_file(tmp_path, {"0000": 5, "0011": 5})
    with pytest.raises(EstimatorError):
        app.run(["mitigate", "--shots", path, "--method", "ps", "--out", str(tmp_path)])


def test_mitigate_invalid_file(app, tmp_path):
    path = tmp_path / "shots.json"
    path.write_text("not json", encoding="utf-8")
    with pytest.raises(InvalidInput):
        app.run(["mitigate", "--shots", str(path)])
