import argparse

from qloc import logger, utils
from qloc.cli import is_tty
from qloc.commands import App, Module, argument, command
from qloc.exceptions import InvalidInput
from qloc.storage import RunRecord

run_log = logger.Run.logger()

SETTINGS: dict[str, type] = {
    "workers": int,
    "log_level": str,
    "output_dir": str,
    "preset": str,
}


class Admin(Module):
    """Installation settings and the run registry."""

    @command(
        "config",
        "List the settings, or set one with KEY VALUE.",
        (
            argument("key", nargs="?", default=None, choices=sorted(SETTINGS)),
            argument("value", nargs="?", default=None),
        ),
        common=False,
    )
    def config(self, args: argparse.Namespace) -> None:
        config = self.app.config
        if args.key is not None:
            if args.value is None:
                raise InvalidInput(f"Setting {args.key} needs a value.")
            value = self._validate(args.key, args.value)
            setattr(config, args.key, value)
            config.save()
            if args.key == "log_level":
                logger.set_level(value)
            run_log.info(None, f"Setting {args.key} changed to {value!r}.")

        rows = [{"key": key, "value": value} for key, value in config.dump().items()]
        print(utils.text.create_table(rows, {"key": "Setting", "value": "Value"}, rich=is_tty()))

    @staticmethod
    def _validate(key: str, value: str) -> int | str:
        if key == "workers":
            try:
                workers = int(value)
            except ValueError:
                raise InvalidInput(f"Workers must be an integer, got {value!r}.") from None
            if workers < 1:
                raise InvalidInput("At least one worker is required.")
            return workers
        if key == "log_level":
            if value.upper() not in logger.LogLevel.__members__:
                levels = ", ".join(logger.LogLevel.__members__)
                raise InvalidInput(f"Log level must be one of {levels}.")
            return value.upper()
        if key == "preset" and value not in ("desk", "smoke"):
            raise InvalidInput("Preset must be desk or smoke.")
        return value

    @command(
        "runs",
        "List the run registry, or remove one record.",
        (
            argument("--kind", default=None, help="manifest, figure or command"),
            argument("--since", default=None, help="only runs created after this date"),
            argument("--remove", default=None, metavar="ID", help="delete one record"),
        ),
        common=False,
    )
    def runs(self, args: argparse.Namespace) -> None:
        if args.remove is not None:
            if not RunRecord.remove(args.remove):
                raise InvalidInput(f"No run record {args.remove}.")
            print(f"Record {args.remove} removed.")
            return

        since = None
        if args.since is not None:
            try:
                since = utils.time.parse_since(args.since)
            except (ValueError, OverflowError):
                raise InvalidInput(f"Cannot parse {args.since!r} as a date.") from None

        records = RunRecord.get_all(kind=args.kind, since=since)
        if not records:
            print("No runs recorded.")
            return
        rows = [
            {
                **record.dump(),
                "experiment_id": utils.text.shorten(record.experiment_id, 24),
                "created": utils.time.format_datetime(record.created),
            }
            for record in records
        ]
        print(
            utils.text.create_table(
                rows,
                {
                    "experiment_id": "Id",
                    "kind": "Kind",
                    "name": "Name",
                    "master_seed": "Seed",
                    "output_dir": "Output",
                    "commit": "Commit",
                    "created": "Created",
                },
                rich=is_tty(),
            )
        )


def setup(app: App) -> None:
    app.add_module(Admin(app))
