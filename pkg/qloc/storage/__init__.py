from qloc.storage.database import RunRecord

__all__ = ("RunRecord",)
