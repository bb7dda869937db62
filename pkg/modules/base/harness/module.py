import argparse
import time

from qloc import logger, utils
from qloc.cli import is_tty
from qloc.commands import App, Module, argument, command
from qloc.harness import (
    FIGURES,
    ExperimentManifest,
    OutputWriter,
    manifest_hash,
    regenerate_figure_data,
    run_anderson_pipeline,
)

run_log = logger.Run.logger()


class Harness(Module):
    """Manifest runs and figure-data regeneration."""

    @command(
        "pipeline",
        "Run the prepare, evolve, corrupt and mitigate pipeline of a manifest.",
        (argument("manifest", help="path to the manifest JSON file"),),
    )
    def pipeline(self, args: argparse.Namespace) -> None:
        manifest = ExperimentManifest.load(args.manifest)
        digest = manifest_hash(manifest)
        workers = self.workers(args)
        run_log.info(manifest.id, f"Running manifest {args.manifest} ({digest[:12]}).")

        started = time.perf_counter()
        result = run_anderson_pipeline(manifest, workers=workers)
        run_log.info(
            manifest.id,
            f"Pipeline finished in {utils.time.format_elapsed(time.perf_counter() - started)}.",
        )

        writer = OutputWriter(args.out or manifest.output or self.output_dir(args), digest)
        writer.write_csv("pipeline", result.rows())
        writer.write_json(
            "manifest", {"manifest": manifest.dump(), "manifest_hash": digest}
        )
        writer.record("manifest", manifest.id, manifest.master_seed, workers)
        print(
            utils.text.create_table(
                result.rows(),
                {
                    "label": "Packet",
                    "t": "t",
                    "method": "Method",
                    "ipr": "IPR",
                    "ipr_std": "Error",
                    "fidelity": "Fidelity",
                    "survival_rate": "Survival",
                    "gate_count": "Gates",
                },
                rich=is_tty(),
            )
        )

    @command(
        "figure",
        "Regenerate the data behind one figure or table.",
        (
            argument("figure_id", nargs="?", default=None, help="figure id, omit to list them"),
        ),
    )
    def figure(self, args: argparse.Namespace) -> None:
        if args.figure_id is None:
            rows = [
                {"id": entry.id, "description": entry.description}
                for entry in FIGURES.values()
            ]
            print(
                utils.text.create_table(
                    rows, {"id": "Figure", "description": "Data"}, rich=is_tty()
                )
            )
            return
        started = time.perf_counter()
        paths = regenerate_figure_data(
            args.figure_id,
            self.preset(args),
            self.output_dir(args),
            args.seed,
            self.workers(args),
        )
        run_log.info(
            None,
            f"Figure {args.figure_id} regenerated in "
            f"{utils.time.format_elapsed(time.perf_counter() - started)}.",
        )
        for path in paths:
            print(path)


def setup(app: App) -> None:
    app.add_module(Harness(app))
