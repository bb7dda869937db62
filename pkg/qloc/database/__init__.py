import importlib
import os
import sys

from sqlalchemy import create_engine
from sqlalchemy.orm import sessionmaker, Session, DeclarativeBase

from qloc.cli import COLOR


DEFAULT_DB_STRING = "sqlite:///qlocal.db"

# Config first, the rest may read it while being imported
MODELS = ("qloc.database.config", "qloc.storage.database")


class Base(DeclarativeBase):
    pass


def db_string() -> str:
    return os.getenv("DB_STRING", DEFAULT_DB_STRING)


engine = create_engine(db_string(), future=True)
session: Session = sessionmaker(engine, future=True)()


def init_core(*, verbose: bool = True) -> None:
    """Import the settings and run-registry models and create their tables."""
    for model in MODELS:
        try:
            importlib.import_module(model)
        except Exception as exc:
            print(
                f"Database models {COLOR.red}{model}{COLOR.none} failed: "
                f"{COLOR.cursive}{exc}{COLOR.none}.",
                file=sys.stderr,
            )  # noqa: T001
            raise
        if verbose:
            print(
                f"Database models {COLOR.green}{model}{COLOR.none} imported.",
                file=sys.stderr,
            )  # noqa: T001

    Base.metadata.create_all(engine)
    session.commit()
