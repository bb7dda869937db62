import pytest

from qloc.commands import App
from qloc.database import session
from qloc.database.config import Config
from qloc.storage import RunRecord

MODULES = (
    "base.admin",
    "base.anderson",
    "base.circuits",
    "base.harness",
    "base.mitigation",
    "base.variance",
    "base.xxz",
)


@pytest.fixture
def app() -> App:
    config = Config.get()
    saved = config.dump()
    app = App(config)
    for module in MODULES:
        app.load_extension(f"modules.{module}.module")
    yield app
    for key, value in saved.items():
        setattr(config, key, value)
    config.save()
    session.query(RunRecord).delete()
    session.commit()
