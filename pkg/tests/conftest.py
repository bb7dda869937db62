import os

# Must happen before the first qloc import creates the engine
os.environ["DB_STRING"] = "sqlite://"

import pytest  # noqa: E402

from qloc import database, logger  # noqa: E402


database.init_core(verbose=False)


@pytest.fixture(autouse=True)
def quiet_logs():
    logger.set_directory(None)
    logger.set_console(False)
    logger.set_level(logger.LogLevel.INFO)
    yield
    logger.set_level(logger.LogLevel.INFO)
