import os
import sys
import time
from collections.abc import Callable


def enabled(name: str) -> bool:
    return bool(os.getenv(f"trace_{name}")) or os.getenv("trace_all") == "1"


def register(name: str) -> Callable[[str], None]:
    """Return a tracer for numerical loops too chatty for the logger.

    .. code-block:: python

        _trace = _tracing.register("qloc_circuit")
        _trace(f"op {index}: {op}")

    Enable it with ``trace_qloc_circuit=1`` (or every tracer with
    ``trace_all=1``). The name follows the package path, ``qloc_mitigation``,
    ``qloc_xxz`` and so on. Lines go to stderr with the seconds elapsed since
    registration.
    """
    if not enabled(name):
        return lambda message: None

    started: float = time.perf_counter()

    def _trace(message: str) -> None:
        elapsed = time.perf_counter() - started
        print(f"[trace:{name} {elapsed:9.3f}] {message}", file=sys.stderr)  # noqa: T001

    return _trace
