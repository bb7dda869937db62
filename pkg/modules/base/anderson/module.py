import argparse

import numpy as np

from qloc import logger, utils
from qloc.anderson import (
    Lattice2D,
    WavepacketSpec,
    ipr_timeseries_ensemble,
    ipr_vs_energy,
    select_representative_disorder,
)
from qloc.cli import is_tty
from qloc.commands import App, Module, argument, command
from qloc.harness import OutputWriter, run_id

run_log = logger.Run.logger()


def _lattice(args: argparse.Namespace) -> Lattice2D:
    return Lattice2D(args.Lx, args.Ly or args.Lx)


LATTICE_ARGUMENTS = (
    argument("--Lx", type=int, default=8, help="lattice width"),
    argument("--Ly", type=int, default=None, help="lattice height (defaults to Lx)"),
    argument("--W", type=float, default=6.0, help="disorder strength"),
    argument("--realizations", type=int, default=100, help="disorder realizations"),
)


class Anderson(Module):
    """Exact Anderson-model computations."""

    @command(
        "anderson-spectrum",
        "Disorder-averaged eigenstate IPR versus rescaled energy.",
        LATTICE_ARGUMENTS + (argument("--bins", type=int, default=20),),
    )
    def anderson_spectrum(self, args: argparse.Namespace) -> None:
        lattice = _lattice(args)
        curve = ipr_vs_energy(
            lattice, args.W, args.realizations, args.bins, args.seed, workers=self.workers(args)
        )
        parameters = {
            "lattice": [lattice.Lx, lattice.Ly],
            "W": args.W,
            "realizations": args.realizations,
            "bins": args.bins,
            "master_seed": args.seed,
        }
        writer = OutputWriter(self.output_dir(args), run_id("anderson-spectrum", parameters))
        writer.write_csv("ipr_vs_energy", curve.rows())
        writer.write_json("anderson-spectrum", parameters)
        writer.record("command", "anderson-spectrum", args.seed, self.workers(args))
        print(
            utils.text.create_table(
                curve.rows(),
                {"energy": "Energy", "mean": "IPR", "stderr": "Error", "count": "States"},
                rich=is_tty(),
            )
        )

    @command(
        "anderson-dynamics",
        "IPR(t) of an exactly evolved wavepacket, averaged over disorder.",
        LATTICE_ARGUMENTS
        + (
            argument("--k0", default="0,0", help="momentum centre, e.g. 0.5pi,-0.1pi"),
            argument("--sigma-p", default="0.3,0.35", help="momentum spread"),
            argument("--x0", default=None, help="position centre (defaults to the middle)"),
            argument("--times", default="0,1,2,3", help="evolution times"),
            argument(
                "--representative",
                action="store_true",
                help="also pick the realization closest to the average curve",
            ),
        ),
    )
    def anderson_dynamics(self, args: argparse.Namespace) -> None:
        lattice = _lattice(args)
        x0 = (
            utils.text.parse_pair(args.x0)
            if args.x0
            else (float(lattice.Lx // 2), float(lattice.Ly // 2))
        )
        spec = WavepacketSpec(
            k0=utils.text.parse_pair(args.k0, angle=True),
            sigma_p=utils.text.parse_pair(args.sigma_p),
            x0=x0,
        )
        times = list(utils.text.parse_pair(args.times))
        workers = self.workers(args)
        curves = ipr_timeseries_ensemble(
            lattice, args.W, spec, times, args.realizations, args.seed, workers=workers
        )
        rows = [
            {"t": t, "mean": float(mean), "median": float(median)}
            for t, mean, median in zip(times, curves.mean(axis=0), np.median(curves, axis=0))
        ]
        parameters = {
            "lattice": [lattice.Lx, lattice.Ly],
            "W": args.W,
            "wavepacket": spec.dump(),
            "times": times,
            "realizations": args.realizations,
            "master_seed": args.seed,
        }
        if args.representative:
            disorder, distance = select_representative_disorder(
                lattice, args.W, spec, times, args.realizations, args.seed, workers=workers
            )
            parameters["representative"] = {"seed": disorder.seed, "distance": distance}
            run_log.info(None, f"Representative disorder seed {disorder.seed}.")

        writer = OutputWriter(self.output_dir(args), run_id("anderson-dynamics", parameters))
        writer.write_csv("ipr_timeseries", rows)
        writer.write_json("anderson-dynamics", parameters)
        writer.record("command", "anderson-dynamics", args.seed, workers)
        header = {"t": "t", "mean": "Mean IPR", "median": "Median"}
        print(utils.text.create_table(rows, header, rich=is_tty()))


def setup(app: App) -> None:
    app.add_module(Anderson(app))
