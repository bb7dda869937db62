import os
import sys
from typing import TextIO


def is_tty(stream: TextIO | None = None) -> bool:
    """Whether result tables on stdout (or ``stream``) reach a terminal."""
    return (stream or sys.stdout).isatty()


def wants_color(stream: TextIO) -> bool:
    if os.getenv("NO_COLOR") or os.name == "nt":
        return False
    return is_tty(stream)


class _Color:
    """ANSI codes for notices on stderr, empty strings when it is redirected."""

    red: str = ""
    green: str = ""
    yellow: str = ""
    none: str = ""

    cursive: str = ""

    def __init__(self, stream: TextIO):
        if not wants_color(stream):
            return

        self.red = "\033[0;31m"
        self.green = "\033[0;32m"
        self.yellow = "\033[0;33m"
        self.none = "\033[0m"
        self.cursive = "\033[3m"


COLOR = _Color(sys.stderr)
