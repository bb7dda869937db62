import datetime

import dateutil.parser


def now() -> datetime.datetime:
    """Local wall-clock time truncated to seconds."""
    return datetime.datetime.now().replace(microsecond=0)


def format_datetime(timestamp: datetime.datetime) -> str:
    return timestamp.strftime("%Y-%m-%d %H:%M:%S")


def format_log_date(timestamp: datetime.datetime) -> str:
    """Day stamp used in log file names."""
    return timestamp.strftime("%Y-%m-%d")


def format_created(timestamp: datetime.datetime) -> str:
    """``created`` field of metadata files."""
    return timestamp.isoformat(timespec="seconds")


def format_elapsed(seconds: float) -> str:
    """Human-readable run duration.

    Runs shorter than a minute keep one decimal, longer ones are shown as
    ``m:ss`` or ``h:mm:ss``.
    """
    if seconds < 60:
        return f"{seconds:.1f} s"
    total = int(seconds)
    hours, rest = divmod(total, 3600)
    minutes, secs = divmod(rest, 60)
    if hours:
        return f"{hours}:{minutes:02}:{secs:02}"
    return f"{minutes}:{secs:02}"


def parse_since(string: str) -> datetime.datetime:
    """Parse the lower bound of a run-registry query.

    ISO 8601 strings are read as they are, anything else fuzzily with the
    day first, so ``10/11/2026`` is the 10th of November. A bare date means
    its midnight.

    Raises:
        ValueError: When the string is not a date.
    """
    try:
        parsed = dateutil.parser.isoparse(string)
    except ValueError:
        parsed = dateutil.parser.parse(timestr=string, dayfirst=True, yearfirst=False)
    # Registry timestamps are naive local time
    if parsed.tzinfo is not None:
        parsed = parsed.astimezone().replace(tzinfo=None)
    return parsed
