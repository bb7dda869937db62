import pytest

from qloc import logger
from qloc.exceptions import InvalidInput
from qloc.storage import RunRecord


def test_config_lists_settings(app, capsys):
    assert 0 == app.run(["config"])
    output = capsys.readouterr().out
    for key in ("workers", "log_level", "output_dir", "preset"):
        assert key in output


def test_config_sets_value(app, capsys):
    app.run(["config", "workers", "3"])
    assert 3 == app.config.workers
    app.run(["config", "log_level", "debug"])
    assert "DEBUG" == app.config.log_level
    assert logger.LogLevel.DEBUG == logger.get_level()


@pytest.mark.parametrize(
    "argv",
    [
        ["config", "workers"],
        ["config", "workers", "many"],
        ["config", "workers", "0"],
        ["config", "log_level", "loud"],
        ["config", "preset", "huge"],
    ],
)
def test_config_negative(app, argv: list):
    with pytest.raises(InvalidInput):
        app.run(argv)


def test_config_unknown_key(app):
    with pytest.raises(SystemExit):
        app.run(["config", "colour", "blue"])


def test_runs(app, capsys):
    app.run(["runs"])
    assert "No runs recorded." in capsys.readouterr().out

    RunRecord.add("exp-1", "figure", "table2", 0, 1, "output/exp-1", "none")
    app.run(["runs", "--kind", "figure"])
    assert "exp-1" in capsys.readouterr().out
    app.run(["runs", "--kind", "manifest"])
    assert "No runs recorded." in capsys.readouterr().out

    app.run(["runs", "--remove", "exp-1"])
    assert RunRecord.get("exp-1") is None


def test_runs_negative(app):
    with pytest.raises(InvalidInput):
        app.run(["runs", "--remove", "absent"])
    with pytest.raises(InvalidInput):
        app.run(["runs", "--since", "not a date"])
