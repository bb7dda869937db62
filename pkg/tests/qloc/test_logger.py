import json

import pytest

from qloc import logger


@pytest.fixture
def log_directory(tmp_path):
    logger.set_directory(str(tmp_path))
    yield tmp_path
    logger.set_directory(None)


def test_level_threshold():
    core_log = logger.Core.logger()
    logger.set_level("WARNING")
    assert core_log.info(None, "dropped") is None
    entry = core_log.warning("run-1", "kept")
    assert entry is not None
    assert "WARNING" == entry.levelstr


def test_set_level_negative():
    with pytest.raises(ValueError):
        logger.set_level("LOUD")


def test_loggers_are_singletons():
    assert logger.Core.logger() is logger.Core.logger()
    assert logger.Run.logger() is not logger.Core.logger()
    with pytest.raises(Exception):
        logger.Run()


def test_entry_format():
    entry = logger.Run.logger().info("exp", "pipeline finished")
    line = entry.format_to_console()
    assert "INFO [exp]" in line
    assert line.endswith(": pipeline finished")
    assert logger.LogScope.RUN == entry.scope


def test_entry_with_exception():
    try:
        raise ValueError("bad value")
    except ValueError as exc:
        entry = logger.Core.logger().error(None, "failed", exception=exc)
    assert "ValueError: bad value" in entry.format_to_console()
    assert "ValueError" == entry.dump()["exception"]


def test_file_log(log_directory):
    logger.Run.logger().info("exp", "written")
    (path,) = log_directory.glob("log_*.log")
    document = json.loads(path.read_text(encoding="utf-8").splitlines()[-1])
    assert "written" == document["message"]
    assert "exp" == document["run"]
    assert "INFO" == document["levelstr"]
