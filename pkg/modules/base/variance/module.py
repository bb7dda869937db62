import argparse
import math

from qloc import utils
from qloc.anderson import Chain, Lattice, Lattice2D, WavepacketSpec
from qloc.cli import is_tty
from qloc.commands import App, Module, argument, command
from qloc.harness import OutputWriter, run_id
from qloc.variance import (
    empirical_variance,
    predict_variance_single_particle,
    quantized_wavepacket_variance,
)


class Variance(Module):
    """Energy variance of wavepackets: closed form against brute force."""

    @command(
        "variance",
        "Predicted and sampled energy variance of a wavepacket.",
        (
            argument("--dims", default="64", help="lattice dimensions: 'L' or 'Lx,Ly'"),
            argument("--W", type=float, default=1.0, help="disorder strength"),
            argument("--k0", default="0.5pi", help="momentum centre"),
            argument("--sigma-p", default=None, help="momentum spread"),
            argument(
                "--sigma-tilde",
                default="2",
                help="momentum spread in grid units, used when --sigma-p is not given",
            ),
            argument("--realizations", type=int, default=500, help="disorder realizations"),
        ),
    )
    def variance(self, args: argparse.Namespace) -> None:
        dims = [int(d) for d in utils.text.parse_pair(args.dims)]
        lattice: Lattice = Chain(dims[0]) if len(dims) == 1 else Lattice2D(dims[0], dims[1])
        k0 = utils.text.parse_pair(args.k0, angle=True)
        if args.sigma_p is not None:
            sigma_p = utils.text.parse_pair(args.sigma_p)
        else:
            tilde = utils.text.parse_pair(args.sigma_tilde)
            if len(tilde) == 1:
                tilde = tilde * len(dims)
            sigma_p = tuple(2 * math.pi * s / L for s, L in zip(tilde, dims))
        spec = WavepacketSpec(k0=k0, sigma_p=sigma_p, x0=tuple(float(L // 2) for L in dims))

        prediction = predict_variance_single_particle(lattice, spec, args.W)
        sampled = empirical_variance(
            lattice, spec, args.W, args.realizations, args.seed, workers=self.workers(args)
        )
        row = {
            **prediction.dump(),
            "empirical": sampled.mean,
            "empirical_stderr": sampled.stderr,
            "relative_error": (
                abs(prediction.total - sampled.mean) / sampled.mean if sampled.mean else math.nan
            ),
            "quantized_kinetic": quantized_wavepacket_variance(lattice, spec),
        }
        parameters = {
            "dims": dims,
            "W": args.W,
            "wavepacket": spec.dump(),
            "realizations": args.realizations,
            "master_seed": args.seed,
        }
        writer = OutputWriter(self.output_dir(args), run_id("variance", parameters))
        writer.write_csv("variance", [row])
        writer.write_json("variance", parameters)
        writer.record("command", "variance", args.seed, self.workers(args))
        print(
            utils.text.create_table(
                [row],
                {
                    "kinetic_term": "Kinetic",
                    "disorder_term": "Disorder",
                    "total": "Predicted",
                    "empirical": "Sampled",
                    "relative_error": "Rel. error",
                    "valid": "Valid",
                },
                rich=is_tty(),
            )
        )


def setup(app: App) -> None:
    app.add_module(Variance(app))
