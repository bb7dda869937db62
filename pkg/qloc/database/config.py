from __future__ import annotations

from sqlalchemy.orm import mapped_column, Mapped

from qloc.database import session, Base


class Config(Base):
    """Persistent settings of the installation."""

    __tablename__ = "config"

    idx: Mapped[int] = mapped_column(primary_key=True, autoincrement=True)
    workers: Mapped[int] = mapped_column(default=1)
    log_level: Mapped[str] = mapped_column(default="INFO")
    output_dir: Mapped[str] = mapped_column(default="output")
    preset: Mapped[str] = mapped_column(default="desk")

    @staticmethod
    def get() -> Config:
        """Get instance of the settings.

        If there is none, it will be created with the default values.

        .. list-table:: Default values for configuration
           :widths: 25 25 25
           :header-rows: 1

           * - Attribute
             - Type
             - Default value
           * - workers
             - :class:`int`
             - ``1``
           * - log_level
             - :class:`str`
             - ``INFO``
           * - output_dir
             - :class:`str`
             - ``output``
           * - preset
             - :class:`str`
             - ``desk``
        """
        query = session.query(Config).one_or_none()
        if query is None:
            query = Config(workers=1, log_level="INFO", output_dir="output", preset="desk")
            session.add(query)
            session.commit()
        return query

    def save(self) -> None:
        """Save settings."""
        session.merge(self)
        session.commit()

    def __repr__(self) -> str:
        return (
            f'<Config workers="{self.workers}" log_level="{self.log_level}" '
            f'output_dir="{self.output_dir}" preset="{self.preset}">'
        )

    def dump(self) -> dict[str, int | str]:
        return {
            "workers": self.workers,
            "log_level": self.log_level,
            "output_dir": self.output_dir,
            "preset": self.preset,
        }
