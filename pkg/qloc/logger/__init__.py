from __future__ import annotations

import datetime
import json
import os
import re
import sys
import traceback
from enum import IntEnum

from qloc.utils import time as time_utils


# Globals


def _get_main_directory() -> str:
    main_py = getattr(sys.modules["__main__"], "__file__", None)
    if main_py:
        return os.path.abspath(os.path.join(main_py, os.pardir))
    return os.getcwd()


MAIN_DIRECTORY = _get_main_directory()


# Setup types


class LogLevel(IntEnum):
    DEBUG = 10
    INFO = 20
    WARNING = 30
    ERROR = 40
    CRITICAL = 50
    NONE = 100


class LogScope(IntEnum):
    CORE = 0
    RUN = 1


class _Settings:
    level: LogLevel = LogLevel.INFO
    directory: str | None = "logs"
    console: bool = True


def set_level(level: LogLevel | str) -> None:
    """Set the process-wide threshold; entries below it are dropped."""
    if isinstance(level, str):
        try:
            level = LogLevel[level.upper()]
        except KeyError:
            raise ValueError(f"Unknown log level {level!r}.") from None
    _Settings.level = level


def get_level() -> LogLevel:
    return _Settings.level


def set_directory(directory: str | None) -> None:
    """Set the directory of the daily JSON log files, ``None`` disables them."""
    _Settings.directory = directory


def set_console(enabled: bool) -> None:
    _Settings.console = enabled


class LogEntry:
    """Log entry."""

    def __init__(
        self,
        stack: list[traceback.FrameSummary],
        scope: LogScope,
        level: LogLevel,
        run: str | None,
        message: str,
        *,
        exception: Exception | None = None,
    ):
        self.timestamp = datetime.datetime.now()
        self.stack = stack
        self.scope = scope
        self.level = level
        self.run = run
        self.message = message
        self.exception = exception

    def __str__(self):
        return (
            f"{time_utils.format_datetime(self.timestamp)} "
            f"{self.level.name} {self.function} "
            f"({self.run or '?'}) {self.message}"
        )

    @property
    def function(self) -> str:
        return self.stack[-1].name if self.stack else "?"

    @property
    def lineno(self) -> int | None:
        return self.stack[-1].lineno if self.stack else None

    @property
    def levelstr(self) -> str:
        return self.level.name

    @property
    def levelno(self) -> int:
        return self.level.value

    @property
    def filename(self) -> str:
        if not self.stack:
            return "__main__"
        # Return path relative to the main script
        filename = self.stack[-1].filename
        if filename.startswith(MAIN_DIRECTORY):
            filename = filename[len(MAIN_DIRECTORY) :]
        if not len(filename):
            filename = "__main__"
        return filename

    @property
    def module(self) -> str | None:
        RE_MODULE = r"(modules/([a-z]+)/([a-z]+)|qloc/([a-z_]+))"
        stubs = re.search(RE_MODULE, self.filename)
        if stubs is None:
            return None

        if stubs.group(4) is not None:
            return f"qloc.{stubs.group(4).removesuffix('.py')}"
        return f"{stubs.group(2)}.{stubs.group(3)}"

    def dump(self) -> dict:
        # The easiest way to include only one decimal is to cut the string
        formatted_timestamp: str = self.timestamp.strftime("%Y-%m-%dT%H:%M:%S.%f")[:-5]
        result = {
            "timestamp": formatted_timestamp,
            "file": self.filename,
        }
        for attr in (
            "lineno",
            "scope",
            "module",
            "levelstr",
            "run",
            "message",
        ):
            result[attr] = getattr(self, attr)
        if self.exception is not None:
            result["exception"] = type(self.exception).__name__
        return result

    def _format_as_string(self) -> str:
        """Format the event as string."""
        stubs: list[str] = [self.levelstr]

        if self.run is not None:
            stubs.append(f"[{self.run}]")
        if self.module is not None:
            stubs.append(self.module)

        message: str = " ".join(stubs) + f": {self.message}"

        if self.exception is not None:
            tb = "".join(
                traceback.format_exception(
                    type(self.exception),
                    self.exception,
                    self.exception.__traceback__,
                )
            )
            message += f"\n{tb}"

        return message

    def format_to_console(self) -> str:
        """Format the event so it can be printed to the console."""
        timestamp = time_utils.format_datetime(self.timestamp)
        return timestamp + " " + self._format_as_string()

    def format_to_file(self) -> str:
        """Format the event so it can be written to a log file."""
        return json.dumps(self.dump(), ensure_ascii=False)


class AbstractLogger:
    scope: LogScope

    def __init__(self):
        raise NotImplementedError(
            f"Class {self.__class__.__name__} cannot be instantiated."
        )

    @staticmethod
    def logger():
        raise NotImplementedError("This function has to be subclassed.")

    def _log(
        self,
        level: LogLevel,
        run: str | None,
        message: str,
        *,
        exception: Exception | None = None,
    ) -> LogEntry | None:
        if level < _Settings.level:
            return None

        entry = LogEntry(
            stack=traceback.extract_stack()[:-2],
            scope=self.scope,
            level=level,
            run=run,
            message=message,
            exception=exception,
        )

        if _Settings.console:
            # stderr keeps stdout free for data piped out of the CLI
            print(entry.format_to_console(), file=sys.stderr, flush=True)

        if _Settings.directory is not None:
            filename: str = f"log_{time_utils.format_log_date(entry.timestamp)}.log"
            os.makedirs(_Settings.directory, exist_ok=True)
            with open(os.path.join(_Settings.directory, filename), "a+") as handle:
                handle.write(entry.format_to_file())
                handle.write("\n")

        return entry

    def debug(
        self, run: str | None, message: str, *, exception: Exception | None = None
    ) -> LogEntry | None:
        return self._log(LogLevel.DEBUG, run, message, exception=exception)

    def info(
        self, run: str | None, message: str, *, exception: Exception | None = None
    ) -> LogEntry | None:
        return self._log(LogLevel.INFO, run, message, exception=exception)

    def warning(
        self, run: str | None, message: str, *, exception: Exception | None = None
    ) -> LogEntry | None:
        return self._log(LogLevel.WARNING, run, message, exception=exception)

    def error(
        self, run: str | None, message: str, *, exception: Exception | None = None
    ) -> LogEntry | None:
        return self._log(LogLevel.ERROR, run, message, exception=exception)

    def critical(
        self, run: str | None, message: str, *, exception: Exception | None = None
    ) -> LogEntry | None:
        return self._log(LogLevel.CRITICAL, run, message, exception=exception)


class Core(AbstractLogger):
    """Logger for library events (numerics, solvers, backends)."""

    __instance: Core | None = None
    scope = LogScope.CORE

    def __init__(self):
        if Core.__instance is not None:
            raise Exception("Logger has to be a singleton, use '.logger()' instead.")
        Core.__instance = self

    @staticmethod
    def logger() -> Core:
        if Core.__instance is None:
            Core()
        assert Core.__instance is not None
        return Core.__instance


class Run(AbstractLogger):
    """Logger for experiment orchestration events."""

    __instance: Run | None = None
    scope = LogScope.RUN

    def __init__(self):
        if Run.__instance is not None:
            raise Exception("Logger has to be a singleton, use '.logger()' instead.")
        Run.__instance = self

    @staticmethod
    def logger() -> Run:
        if Run.__instance is None:
            Run()
        assert Run.__instance is not None
        return Run.__instance
