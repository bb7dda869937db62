from __future__ import annotations

import datetime
from typing import Any, cast

from sqlalchemy import BigInteger, CursorResult, delete
from sqlalchemy.orm import mapped_column, Mapped

from qloc.database import session, Base
from qloc.utils import time as time_utils


class RunRecord(Base):
    """Registry entry of one executed manifest or figure preset."""

    __tablename__ = "qloc_run_record"

    experiment_id: Mapped[str] = mapped_column(primary_key=True)
    kind: Mapped[str] = mapped_column()
    name: Mapped[str] = mapped_column()
    master_seed: Mapped[int] = mapped_column(BigInteger)
    workers: Mapped[int] = mapped_column()
    output_dir: Mapped[str] = mapped_column()
    commit: Mapped[str] = mapped_column()
    created: Mapped[datetime.datetime] = mapped_column()

    @staticmethod
    def add(
        experiment_id: str,
        kind: str,
        name: str,
        master_seed: int,
        workers: int,
        output_dir: str,
        commit: str,
    ) -> RunRecord:
        """Add or refresh the record; re-running a manifest overwrites it."""
        record = RunRecord(
            experiment_id=experiment_id,
            kind=kind,
            name=name,
            master_seed=master_seed,
            workers=workers,
            output_dir=output_dir,
            commit=commit,
            created=time_utils.now(),
        )
        session.merge(record)
        session.commit()
        return record

    @staticmethod
    def get(experiment_id: str) -> RunRecord | None:
        return session.query(RunRecord).filter_by(experiment_id=experiment_id).one_or_none()

    @staticmethod
    def get_all(
        *, kind: str | None = None, since: datetime.datetime | None = None
    ) -> list[RunRecord]:
        query = session.query(RunRecord)
        if kind is not None:
            query = query.filter_by(kind=kind)
        if since is not None:
            query = query.filter(RunRecord.created >= since)
        return query.order_by(RunRecord.created).all()

    @staticmethod
    def remove(experiment_id: str) -> bool:
        result = session.execute(
            delete(RunRecord).where(RunRecord.experiment_id == experiment_id)
        )
        session.commit()

        return cast(CursorResult, result).rowcount == 1

    def __repr__(self) -> str:
        return (
            f'<RunRecord experiment_id="{self.experiment_id}" kind="{self.kind}" '
            f'name="{self.name}" master_seed="{self.master_seed}" '
            f'output_dir="{self.output_dir}">'
        )

    def dump(self) -> dict[str, Any]:
        """Return object representation as dictionary for easy serialisation."""
        return {
            "experiment_id": self.experiment_id,
            "kind": self.kind,
            "name": self.name,
            "master_seed": self.master_seed,
            "workers": self.workers,
            "output_dir": self.output_dir,
            "commit": self.commit,
            "created": self.created.isoformat(),
        }
