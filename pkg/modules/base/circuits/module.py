import argparse

from qloc import utils
from qloc.cli import is_tty
from qloc.commands import App, Module, argument, command
from qloc.harness import OutputWriter, benchmark_preparation, run_id


class Circuits(Module):
    """State-preparation circuits."""

    @command(
        "prep-benchmark",
        "Classical fidelity of unitary, mcm-ff-1 and mcm-ff-2 W-state preparation.",
        (
            argument("--sizes", default="8,12,16,20,32", help="register sizes"),
            argument("--shots", type=int, default=10_000, help="shots per method"),
            argument("--epsilon", type=float, default=0.01, help="readout flip probability"),
        ),
    )
    def prep_benchmark(self, args: argparse.Namespace) -> None:
        sizes = [int(N) for N in utils.text.parse_pair(args.sizes)]
        rows = benchmark_preparation(
            sizes, args.shots, args.epsilon, args.seed, workers=self.workers(args)
        )
        parameters = {
            "sizes": sizes,
            "shots": args.shots,
            "epsilon": args.epsilon,
            "master_seed": args.seed,
        }
        writer = OutputWriter(self.output_dir(args), run_id("prep-benchmark", parameters))
        writer.write_csv("benchmark", rows)
        writer.write_json("prep-benchmark", parameters)
        writer.record("command", "prep-benchmark", args.seed, self.workers(args))
        print(
            utils.text.create_table(
                rows,
                {
                    "method": "Method",
                    "N": "N",
                    "shots": "Shots",
                    "fidelity": "Fidelity",
                    "stderr": "Error",
                },
                rich=is_tty(),
            )
        )


def setup(app: App) -> None:
    app.add_module(Circuits(app))
