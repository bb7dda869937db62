import argparse
from pathlib import Path

import numpy as np

from qloc import logger, utils
from qloc.cli import is_tty
from qloc.commands import App, Module, argument, command
from qloc.exceptions import InvalidInput
from qloc.harness import OutputWriter, run_id
from qloc.mitigation import (
    BitFlipModel,
    ShotSet,
    bootstrap,
    corrupt,
    ipr_from_distribution,
    mle_fit,
    postselect,
    ps_distribution,
    synthetic_shots,
    total_variation,
)

run_log = logger.Run.logger()

METHOD_ESTIMATORS: dict[str, str] = {"ps": "ps-ipr", "mle": "mle-ipr"}


class Mitigation(Module):
    """Readout-error mitigation of measured shots."""

    @command(
        "mitigate",
        "Post-selection or maximum-likelihood estimate from a shot file.",
        (
            argument("--shots", default=None, help="JSON file mapping bitstrings to counts"),
            argument(
                "--synthetic",
                type=int,
                default=None,
                help="instead of a file, corrupt uniform one-hot shots on this many qubits",
            ),
            argument("--n-shots", type=int, default=100_000, help="synthetic shot count"),
            argument("--epsilon", type=float, default=0.05, help="synthetic flip probability"),
            argument("--method", choices=sorted(METHOD_ESTIMATORS), default="mle"),
            argument("--ne", type=int, default=1, help="excitation number of the source"),
            argument("--bootstrap", type=int, default=0, help="bootstrap resamples, 0 disables"),
        ),
    )
    def mitigate(self, args: argparse.Namespace) -> None:
        if args.ne != 1:
            raise InvalidInput("Only one-excitation sources can be mitigated.")

        truth: np.ndarray | None = None
        if args.shots is not None:
            try:
                shots = ShotSet.from_json(Path(args.shots).read_text(encoding="utf-8"))
            except OSError as exc:
                raise InvalidInput(f"Cannot read {args.shots}: {exc.strerror}.") from None
            except ValueError as exc:
                raise InvalidInput(f"{args.shots} is not a shot file: {exc}") from None
            source = {"shots": shots.dump()}
        elif args.synthetic is not None:
            truth = np.full(args.synthetic, 1 / args.synthetic)
            clean = synthetic_shots(truth, args.n_shots, args.seed)
            shots = corrupt(clean, BitFlipModel(args.epsilon), args.seed)
            source = {
                "synthetic": args.synthetic,
                "n_shots": args.n_shots,
                "epsilon": args.epsilon,
            }
        else:
            raise InvalidInput("Give a shot file with --shots or a size with --synthetic.")
        parameters = {
            **source,
            "method": args.method,
            "ne": args.ne,
            "bootstrap": args.bootstrap,
            "master_seed": args.seed,
        }
        workers = self.workers(args)

        _, survival = postselect(shots, args.ne)
        result: dict = {
            "epsilon_hat": None,
            "loglik": None,
            "iterations": None,
            "survival_rate": survival,
        }
        if args.method == "ps":
            p_hat, _ = ps_distribution(shots, args.ne)
        else:
            fit = mle_fit(shots)
            p_hat = fit.p_hat
            result.update(
                {
                    "epsilon_hat": fit.epsilon_hat,
                    "loglik": fit.log_likelihood,
                    "iterations": fit.iterations,
                }
            )
            if not fit.converged:
                run_log.warning(None, f"EM stopped after {fit.iterations} iterations.")
        result["p_hat"] = p_hat.tolist()
        result["ipr"] = ipr_from_distribution(p_hat)
        result["ipr_std"] = (
            bootstrap(
                shots,
                METHOD_ESTIMATORS[args.method],
                args.bootstrap,
                args.seed,
                workers=workers,
            ).std
            if args.bootstrap
            else None
        )
        if truth is not None:
            result["tv_to_truth"] = total_variation(p_hat, truth)

        writer = OutputWriter(self.output_dir(args), run_id("mitigate", parameters))
        writer.write_csv(
            "distribution",
            [{"site": site, "p_hat": float(p)} for site, p in enumerate(p_hat)],
        )
        writer.write_json("mitigate", {**parameters, **result})
        writer.record("command", "mitigate", args.seed, workers)

        row = {key: value for key, value in result.items() if key != "p_hat"}
        print(
            utils.text.create_table(
                [{"method": args.method.upper(), **row}],
                {
                    "method": "Method",
                    "ipr": "IPR",
                    "ipr_std": "Error",
                    "survival_rate": "Survival",
                    "epsilon_hat": "ε̂",
                    "iterations": "Iterations",
                },
                rich=is_tty(),
            )
        )


def setup(app: App) -> None:
    app.add_module(Mitigation(app))
