__all__ = (
    "admin",
    "anderson",
    "circuits",
    "harness",
    "mitigation",
    "variance",
    "xxz",
)
__name__ = "base"
__version__ = "qlocal"
