import os
import platform
import sys

import numpy
import scipy
import sqlalchemy

from qloc.cli import COLOR
from qloc import exceptions


# Setup checks


def test_dotenv() -> None:
    if not isinstance(os.getenv("DB_STRING"), str):
        print(
            f"{COLOR.yellow}DB_STRING is not set, using the local SQLite file.{COLOR.none}",
            file=sys.stderr,
        )  # noqa: T001


test_dotenv()


def print_versions():
    from qloc.harness.output import code_commit

    python_version: str = (
        f"{sys.version_info.major}.{sys.version_info.minor}.{sys.version_info.micro}"
    )
    python_release: str = f"{platform.machine()} {platform.version()}"

    print("Starting with:", file=sys.stderr)  # noqa: T001
    print(f"- Python version {COLOR.green}{python_version}{COLOR.none}", file=sys.stderr)
    print(f"- Python release {python_release}", file=sys.stderr)
    print(f"- numpy {COLOR.green}{numpy.__version__}{COLOR.none}", file=sys.stderr)
    print(f"- scipy {COLOR.green}{scipy.__version__}{COLOR.none}", file=sys.stderr)

    commit: str = code_commit()
    color: str = COLOR.yellow if commit == "none" else COLOR.green
    print(f"- commit {color}{commit}{COLOR.none}", file=sys.stderr)  # noqa: T001


if os.getenv("QLOCAL_QUIET") is None:
    print_versions()


# Database


from qloc import database
from qloc.database.config import Config


database.init_core(verbose=False)


# Load or create config object


config = Config.get()


# Setup logging

from qloc import logger

logger.set_level(config.log_level)
core_log = logger.Core.logger()


# Setup modules

from qloc.commands import App

app = App(config)

MODULES = (
    "base.admin",
    "base.anderson",
    "base.circuits",
    "base.harness",
    "base.mitigation",
    "base.variance",
    "base.xxz",
)


def load_modules():
    for module in MODULES:
        try:
            app.load_extension(f"modules.{module}.module")
        except (ImportError, ModuleNotFoundError) as exc:
            print(
                f"Module {COLOR.red}{module}{COLOR.none} not found: {exc}.",
                file=sys.stderr,
            )  # noqa: T001
            continue


def main(argv: list[str] | None = None) -> int:
    load_modules()
    try:
        return app.run(argv)
    except exceptions.QlocException as exc:
        print(f"{COLOR.red}{exc}{COLOR.none}", file=sys.stderr)  # noqa: T001
        core_log.error(None, str(exc), exception=exc)
        return 1
    except sqlalchemy.exc.SQLAlchemyError as exc:
        # Make sure we rollback the database session if we encounter an error
        database.session.rollback()
        database.session.commit()
        core_log.critical(
            None,
            "qlocal database session rolled back. The bubbled-up cause is:\n"
            + "\n".join([f"| {line}" for line in str(exc).split("\n")]),
        )
        return 1


if __name__ == "__main__":
    sys.exit(main())
