import math
import re
from collections.abc import Iterable

from qloc.exceptions import InvalidInput


RE_PI = re.compile(r"^\s*([+-]?\d*\.?\d*(?:e[+-]?\d+)?)\s*\*?\s*pi\s*$", re.IGNORECASE)


def shorten(string: str, limit: int) -> str:
    """Shorten text to specified length.

    :param string: Text to be shortened.
    :param limit: Maximal length of the output, including the ellipsis.
    """
    if len(string) <= limit:
        return string
    return string[: limit - 1] + "…"


def parse_bool(string: str) -> bool | None:
    """Parse string into a boolean.

    Pass strings ``1``, ``true``, ``yes`` for ``True``.

    Pass strings ``0``, ``false``, ``no`` for ``False``.

    Other keywords return ``None``.
    """
    if string.lower() in ("1", "true", "yes"):
        return True
    if string.lower() in ("0", "false", "no"):
        return False
    return None


def parse_angle(string: str) -> float:
    """Parse a number that may be given in units of pi.

    ``0.25pi``, ``-pi``, ``pi/2`` and ``0.785`` are all accepted.
    """
    string = string.strip()
    if "/" in string:
        numerator, denominator = string.split("/", 1)
        return parse_angle(numerator) / float(denominator)

    match = RE_PI.match(string)
    if match is not None:
        factor: str = match.group(1)
        if factor in ("", "+"):
            return math.pi
        if factor == "-":
            return -math.pi
        return float(factor) * math.pi

    try:
        return float(string)
    except ValueError:
        raise InvalidInput(f"Cannot parse {string!r} as an angle.") from None


def parse_pair(string: str, *, angle: bool = False) -> tuple[float, ...]:
    """Parse comma separated numbers, ``0.5pi,-0.1pi`` -> ``(1.5707…, -0.3141…)``."""
    parser = parse_angle if angle else float
    try:
        return tuple(parser(part) for part in string.split(","))
    except ValueError:
        raise InvalidInput(f"Cannot parse {string!r} as numbers.") from None


def create_table(
    iterable: Iterable[object],
    header: dict[str, str],
    *,
    rich: bool = True,
) -> str:
    """Create table from any iterable.

    Used to print result rows to the terminal.

    Args:
        iterable: Any iterable of items (objects or dictionaries).
        header: Dictionary of item attributes and their column titles.
        rich: Color the heading and every other row.
    """
    matrix: list[list[str]] = []

    # Compute column widths, make sure all fields have non-None values
    matrix.append(list(header.values()))
    column_widths: list[int] = [len(v) for v in header.values()]
    for item in iterable:
        line: list[str] = []
        for i, attr in enumerate(header.keys()):
            if isinstance(item, dict):
                value = item.get(attr, "")
            else:
                value = getattr(item, attr, "")
            line.append(_format_cell(value))

            item_width: int = len(line[i])
            if column_widths[i] < item_width:
                column_widths[i] = item_width

        matrix.append(line)

    H: str = ""
    A: str = ""
    R: str = ""
    if rich:
        H = "\u001b[1;34m"  # bold blue
        A = "\u001b[36m"  # cyan
        R = "\u001b[0m"  # reset

    table: str = ""
    for i, matrix_line in enumerate(matrix):
        mline: str = ""

        # Color heading & odd lines
        if i == 0:
            mline += H
        elif i % 2 == 0:
            mline += A

        for column_no, column_width in enumerate(column_widths):
            mline += matrix_line[column_no].ljust(column_width + 2)

        mline = mline.rstrip()
        if i % 2 == 0:
            mline += R + "\n"
        else:
            mline += "\n"

        table += mline

    return table


def _format_cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)
