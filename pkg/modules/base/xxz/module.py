import argparse

from qloc import logger, utils
from qloc.circuit import apply
from qloc.cli import is_tty
from qloc.commands import App, Module, argument, command
from qloc.harness import OutputWriter, run_id
from qloc.xxz import (
    AnsatzParameters,
    QuasiparticleWavepacketSpec,
    XXZModel,
    ansatz_circuit,
    evolve_energy_density,
    exact_wavepacket_energy,
    initial_wavepacket_state,
    optimize,
    velocity,
)

run_log = logger.Run.logger()

MODEL_ARGUMENTS = (
    argument("--n", "--N", dest="N", type=int, default=10, help="chain length, 2 mod 4"),
    argument("--delta", type=float, default=0.5, help="anisotropy Δ"),
    argument("--k0", default="0.25pi", help="wavepacket momentum"),
    argument(
        "--sigma", "--sigma-p", dest="sigma_p", type=float, default=0.2, help="momentum spread"
    ),
    argument("--layers", type=int, default=4, help="ansatz layers"),
    argument("--max-evals", type=int, default=20_000, help="energy evaluation budget"),
)


def _setup(args: argparse.Namespace) -> tuple[XXZModel, QuasiparticleWavepacketSpec]:
    model = XXZModel(args.N, args.delta)
    spec = QuasiparticleWavepacketSpec(
        k0=utils.text.parse_angle(args.k0), sigma_p=args.sigma_p
    )
    return model, spec


class XXZ(Module):
    """Variational quasiparticle wavepackets of the XXZ chain."""

    @command(
        "xxz-train",
        "Optimize the wavepacket ansatz and compare with the exact energy.",
        MODEL_ARGUMENTS,
    )
    def xxz_train(self, args: argparse.Namespace) -> None:
        model, spec = _setup(args)
        workers = self.workers(args)
        result = optimize(model, spec, args.layers, max_evals=args.max_evals, workers=workers)
        exact = exact_wavepacket_energy(model, spec, workers=workers)
        parameters = {
            "N": model.N,
            "delta": model.delta,
            "wavepacket": spec.dump(),
            "layers": args.layers,
            "max_evals": args.max_evals,
        }
        writer = OutputWriter(self.output_dir(args), run_id("xxz-train", parameters))
        writer.write_csv(
            "trace", [{"iteration": i, "energy": e} for i, e in enumerate(result.trace)]
        )
        writer.write_json(
            "xxz-train", {**parameters, "result": result.dump(), "exact_energy": exact}
        )
        writer.record("command", "xxz-train", args.seed, workers)
        row = {
            "energy": result.energy,
            "exact": exact,
            "gap": result.energy - exact,
            "evaluations": result.evaluations,
        }
        print(
            utils.text.create_table(
                [row],
                {
                    "energy": "Ansatz",
                    "exact": "Exact",
                    "gap": "Gap",
                    "evaluations": "Evaluations",
                },
                rich=is_tty(),
            )
        )

    @command(
        "xxz-dynamics",
        "Energy density of the prepared wavepacket over time.",
        MODEL_ARGUMENTS
        + (
            argument("--times", default="0,0.5,1,1.5,2", help="evolution times"),
            argument("--dt", type=float, default=None, help="Trotter step, exact if omitted"),
            argument("--theta", default=None, help="trained angles, skips the optimization"),
        ),
    )
    def xxz_dynamics(self, args: argparse.Namespace) -> None:
        model, spec = _setup(args)
        workers = self.workers(args)
        initial, _ = initial_wavepacket_state(spec, model.N)
        if args.theta is not None:
            params = AnsatzParameters(utils.text.parse_pair(args.theta))
        else:
            params = optimize(
                model,
                spec,
                args.layers,
                max_evals=args.max_evals,
                workers=workers,
                initial=initial,
            ).params
        prepared = apply(ansatz_circuit(params, model.N), initial, backend="sector").state
        times = list(utils.text.parse_pair(args.times))
        density = evolve_energy_density(prepared, model, times, dt=args.dt)
        speed = velocity(density) if len(times) > 1 else None
        run_log.info(None, f"XXZ Δ={model.delta} wavepacket velocity {speed}.")

        parameters = {
            "N": model.N,
            "delta": model.delta,
            "wavepacket": spec.dump(),
            "theta": params.theta.tolist(),
            "times": times,
            "dt": args.dt,
        }
        writer = OutputWriter(self.output_dir(args), run_id("xxz-dynamics", parameters))
        writer.write_csv("energy_density", density.rows())
        writer.write_json("xxz-dynamics", {**parameters, "velocity": speed})
        writer.record("command", "xxz-dynamics", args.seed, workers)
        rows = [{"t": t, "total": float(e)} for t, e in zip(times, density.totals())]
        print(utils.text.create_table(rows, {"t": "t", "total": "Energy"}, rich=is_tty()))


def setup(app: App) -> None:
    app.add_module(XXZ(app))
