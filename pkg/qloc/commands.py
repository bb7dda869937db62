"""Command modules and the argument parser that dispatches to them.

A command module is a ``modules/<repo>/<name>/module.py`` file with one
:class:`Module` subclass and a ``setup(app)`` function adding it to the
:class:`App`. Every method decorated with :func:`command` becomes one CLI
verb.
"""

from __future__ import annotations

import argparse
import importlib
import inspect
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

from qloc.exceptions import InvalidInput

if TYPE_CHECKING:
    from qloc.database.config import Config


@dataclass(frozen=True)
class Argument:
    flags: tuple[str, ...]
    options: dict[str, Any] = field(default_factory=dict)


def argument(*flags: str, **options: Any) -> Argument:
    """Describe one argument in the terms of :meth:`argparse.ArgumentParser.add_argument`."""
    return Argument(flags, options)


@dataclass(frozen=True)
class CommandSpec:
    name: str
    help: str
    arguments: tuple[Argument, ...]
    common: bool


def command(
    name: str, help: str, arguments: Sequence[Argument] = (), *, common: bool = True
) -> Callable:
    """Mark a :class:`Module` method as the verb ``name``.

    ``common`` adds the ``--seed``, ``--out``, ``--preset`` and ``--workers``
    flags shared by every experiment verb.
    """

    def decorator(function: Callable) -> Callable:
        spec = CommandSpec(name, help, tuple(arguments), common)
        function.__qloc_command__ = spec  # type: ignore[attr-defined]
        return function

    return decorator


class Module:
    """Group of related verbs."""

    def __init__(self, app: App):
        self.app = app

    def workers(self, args: argparse.Namespace) -> int:
        return args.workers or self.app.config.workers

    def output_dir(self, args: argparse.Namespace) -> str:
        return args.out or self.app.config.output_dir

    def preset(self, args: argparse.Namespace) -> str:
        return args.preset or self.app.config.preset

    def get_commands(self) -> list[tuple[CommandSpec, Callable]]:
        return [
            (method.__qloc_command__, method)
            for _, method in inspect.getmembers(self, inspect.ismethod)
            if hasattr(method, "__qloc_command__")
        ]


class App:
    """Holds the loaded modules and builds the argument parser from them."""

    def __init__(self, config: Config, prog: str = "qlocal"):
        self.config = config
        self.prog = prog
        self.modules: dict[str, Module] = {}
        self.handlers: dict[str, tuple[CommandSpec, Callable]] = {}

    def add_module(self, module: Module) -> None:
        name = type(module).__name__
        if name in self.modules:
            raise InvalidInput(f"Module {name} is already loaded.")
        for spec, handler in module.get_commands():
            if spec.name in self.handlers:
                raise InvalidInput(f"Command {spec.name} is defined twice.")
            self.handlers[spec.name] = (spec, handler)
        self.modules[name] = module

    def load_extension(self, name: str) -> None:
        """Import ``name`` and call its ``setup(app)``."""
        extension = importlib.import_module(name)
        extension.setup(self)

    def parser(self) -> argparse.ArgumentParser:
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument("--seed", type=int, default=0, help="master seed")
        common.add_argument("--out", default=None, help="output directory")
        common.add_argument("--preset", default=None, help="scale preset (desk, smoke)")
        common.add_argument("--workers", type=int, default=None, help="worker threads")

        parser = argparse.ArgumentParser(prog=self.prog)
        subparsers = parser.add_subparsers(dest="command", metavar="command", required=True)
        for name in sorted(self.handlers):
            spec, _ = self.handlers[name]
            subparser = subparsers.add_parser(
                name, help=spec.help, parents=[common] if spec.common else []
            )
            for arg in spec.arguments:
                subparser.add_argument(*arg.flags, **arg.options)
        return parser

    def run(self, argv: Sequence[str] | None = None) -> int:
        args = self.parser().parse_args(argv)
        _, handler = self.handlers[args.command]
        result = handler(args)
        return 0 if result is None else int(result)
