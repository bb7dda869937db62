"""Figure-data registry.

Every figure id maps to a builder producing named tables of rows, and to
named presets. ``desk`` runs in minutes on a workstation and documents
where it departs from the published scale in its ``notes``; ``smoke`` runs
in seconds and only exists to exercise the code paths.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from qloc import logger
from qloc.anderson import (
    DisorderRealization,
    Lattice2D,
    WavepacketSpec,
    build_wavepacket,
    ipr_timeseries_ensemble,
    ipr_vs_energy,
    overlap_histogram,
    probability_density,
)
from qloc.circuit import (
    TrotterPlan,
    apply,
    build_trotter_circuit,
    trotter_evolve,
    trotter_vs_exact,
)
from qloc.exceptions import InvalidInput, UnknownFigure
from qloc.harness.benchmark import benchmark_preparation
from qloc.harness.manifest import ExperimentManifest
from qloc.harness.output import OutputWriter
from qloc.harness.pipeline import preparation_spec, run_anderson_pipeline
from qloc.stateprep import mcmff2_table, synthesize_wavepacket_circuit
from qloc.xxz import (
    QuasiparticleWavepacketSpec,
    XXZModel,
    ansatz_circuit,
    evolve_energy_density,
    exact_lowest_excitations,
    initial_wavepacket_state,
    layer_sweep,
    optimize,
    velocity,
)

run_log = logger.Run.logger()

PRESETS: tuple[str, ...] = ("desk", "smoke")

Tables = dict[str, list[dict]]
Builder = Callable[[dict[str, Any], int, int], Tables]


def anderson_8x7(master_seed: int, **overrides: Any) -> ExperimentManifest:
    """The 8×7 hardware manifest with a low- and a high-energy wavepacket."""
    document: dict[str, Any] = {
        "id": "anderson-8x7",
        "lattice": {"Lx": 8, "Ly": 7},
        "W": 6.0,
        "wavepackets": [
            {
                "label": "low",
                "k0": [0.0, 0.0],
                "sigma_p": [0.3, 0.35],
                "x0": [3.5, 3],
                "trunc_threshold": 0.01,
            },
            {
                "label": "high",
                "k0": ["0.5pi", "-0.1pi"],
                "sigma_p": [0.3, 0.35],
                "x0": [3.5, 3],
                "trunc_threshold": 0.01,
            },
        ],
        "dt": 0.25,
        "times": [0, 1, 2, 3],
        "shots": 500,
        "master_seed": master_seed,
        "epsilon": 0.02,
        "methods": ["ps", "mle"],
        "bootstrap": 0,
        "truncate_times": [0, 1],
    }
    document.update(overrides)
    return ExperimentManifest.from_dict(document)


@dataclass(frozen=True)
class Figure:
    id: str
    description: str
    builder: Builder = field(repr=False)
    presets: dict[str, dict[str, Any]] = field(repr=False)

    def parameters(self, preset: str) -> dict[str, Any]:
        if preset not in self.presets:
            raise InvalidInput(f"Unknown preset {preset!r}, use one of {', '.join(PRESETS)}.")
        return self.presets[preset]


FIGURES: dict[str, Figure] = {}


def figure(figure_id: str, description: str, *, desk: dict, smoke: dict):
    """Register the decorated builder under ``figure_id``."""

    def decorator(builder: Builder) -> Builder:
        FIGURES[figure_id] = Figure(
            id=figure_id,
            description=description,
            builder=builder,
            presets={"desk": desk, "smoke": smoke},
        )
        return builder

    return decorator


def _square(L: int) -> Lattice2D:
    return Lattice2D(L, L)


def _mobility_packets(params: dict) -> dict[str, WavepacketSpec]:
    centre = (params["L"] // 2, params["L"] // 2)
    return {
        label: WavepacketSpec(k0=k0, sigma_p=params["sigma_p"], x0=centre)
        for label, k0 in (("low", (0.0, 0.0)), ("high", (0.75 * math.pi, 0.75 * math.pi)))
    }


@figure(
    "fig1a",
    "Eigenstate IPR versus rescaled energy for several disorder strengths.",
    desk={
        "L": 20,
        "W": [1, 3, 6, 12],
        "realizations": 200,
        "bins": 20,
        "notes": "20×20 and 200 realizations instead of 50×50 and 2000.",
    },
    smoke={"L": 6, "W": [1, 12], "realizations": 2, "bins": 6, "notes": "Smoke scale."},
)
def _fig1a(params: dict, seed: int, workers: int) -> Tables:
    rows: list[dict] = []
    for W in params["W"]:
        curve = ipr_vs_energy(
            _square(params["L"]), W, params["realizations"], params["bins"], seed, workers=workers
        )
        rows += [{"W": W, **row} for row in curve.rows()]
    return {"ipr_vs_energy": rows}


@figure(
    "fig1b",
    "Wavepacket weight per rescaled-energy bin for the low and high packets.",
    desk={
        "L": 20,
        "W": 3.0,
        "sigma_p": [0.1, 0.1],
        "realizations": 200,
        "bins": 20,
        "notes": "20×20 and 200 realizations instead of 50×50 and 2000.",
    },
    smoke={
        "L": 6,
        "W": 3.0,
        "sigma_p": [0.5, 0.5],
        "realizations": 2,
        "bins": 6,
        "notes": "Smoke scale.",
    },
)
def _fig1b(params: dict, seed: int, workers: int) -> Tables:
    rows: list[dict] = []
    for label, spec in _mobility_packets(params).items():
        centers, weights = overlap_histogram(
            _square(params["L"]),
            params["W"],
            spec,
            params["realizations"],
            params["bins"],
            seed,
            workers=workers,
        )
        rows += [
            {"label": label, "energy": float(c), "weight": float(w)}
            for c, w in zip(centers, weights)
        ]
    return {"overlaps": rows}


@figure(
    "fig1-dynamics",
    "Disorder-averaged IPR(t) of the low and high packets.",
    desk={
        "L": 20,
        "W": 3.0,
        "sigma_p": [0.1, 0.1],
        "times": [float(t) for t in range(0, 251, 10)],
        "realizations": 100,
        "notes": "20×20 and 100 realizations instead of 50×50 and 2000.",
    },
    smoke={
        "L": 6,
        "W": 3.0,
        "sigma_p": [0.5, 0.5],
        "times": [0.0, 5.0, 10.0],
        "realizations": 2,
        "notes": "Smoke scale.",
    },
)
def _fig1_dynamics(params: dict, seed: int, workers: int) -> Tables:
    rows: list[dict] = []
    for label, spec in _mobility_packets(params).items():
        curves = ipr_timeseries_ensemble(
            _square(params["L"]),
            params["W"],
            spec,
            params["times"],
            params["realizations"],
            seed,
            workers=workers,
        )
        for t, mean, median in zip(
            params["times"], curves.mean(axis=0), np.median(curves, axis=0)
        ):
            rows.append({"label": label, "t": t, "mean": float(mean), "median": float(median)})
    return {"ipr_timeseries": rows}


@figure(
    "fig3",
    "Ideal, post-selected and MLE-mitigated IPR(t) on the 8×7 lattice.",
    desk={
        "times": [0, 1, 2, 3],
        "shots": 500,
        "bootstrap": 100,
        "notes": "IID readout flips at ε=0.02 stand in for the device noise.",
    },
    smoke={"times": [0, 1], "shots": 200, "bootstrap": 0, "notes": "Smoke scale."},
)
def _fig3(params: dict, seed: int, workers: int) -> Tables:
    overrides = {key: params[key] for key in ("times", "shots", "bootstrap")}
    result = run_anderson_pipeline(anderson_8x7(seed, **overrides), workers=workers)
    return {"pipeline": result.rows()}


@figure(
    "fig4b",
    "Lowest excitation per momentum of the XXZ chain.",
    desk={"N": 14, "deltas": [-0.5, 0.0, 0.5], "notes": "N=14 instead of N=22."},
    smoke={"N": 10, "deltas": [0.0], "notes": "Smoke scale."},
)
def _fig4b(params: dict, seed: int, workers: int) -> Tables:
    rows: list[dict] = []
    gap: list[dict] = []
    N = params["N"]
    for delta in params["deltas"]:
        spectrum = exact_lowest_excitations(XXZModel(N, delta), workers=workers)
        rows += spectrum.rows()
        if delta == 0:
            k = 2 * math.pi / N
            gap.append(
                {
                    "N": N,
                    "k": k,
                    "excitation": spectrum.excitation(k),
                    "expected": 4 * math.sin(math.pi / N),
                }
            )
    return {"dispersion": rows, "gap_check": gap}


@figure(
    "fig5",
    "Ansatz energy above the exact wavepacket energy versus layer count.",
    desk={
        "N": 10,
        "deltas": [-0.5, 0.5],
        "k0": 0.25 * math.pi,
        "sigma_p": 0.2,
        "layers": [2, 4, 6, 8],
        "max_evals": 20_000,
        "notes": "N=10 up to 8 layers instead of N=22 up to 12.",
    },
    smoke={
        "N": 10,
        "deltas": [0.5],
        "k0": 0.25 * math.pi,
        "sigma_p": 0.2,
        "layers": [1],
        "max_evals": 200,
        "notes": "Smoke scale.",
    },
)
def _fig5(params: dict, seed: int, workers: int) -> Tables:
    spec = QuasiparticleWavepacketSpec(k0=params["k0"], sigma_p=params["sigma_p"])
    rows: list[dict] = []
    for delta in params["deltas"]:
        rows += layer_sweep(
            XXZModel(params["N"], delta),
            spec,
            params["layers"],
            max_evals=params["max_evals"],
            workers=workers,
        )
    return {"layer_sweep": rows}


@figure(
    "fig6",
    "Ground-subtracted energy density of the prepared quasiparticle wavepacket.",
    desk={
        "N": 14,
        "deltas": [-0.5, 0.5],
        "k0": 0.25 * math.pi,
        "sigma_p": 0.2,
        "layers": 4,
        "max_evals": 20_000,
        "times": [0.25 * step for step in range(17)],
        "notes": "N=14 and 4 layers instead of N=22 and 12.",
    },
    smoke={
        "N": 10,
        "deltas": [0.5],
        "k0": 0.25 * math.pi,
        "sigma_p": 0.2,
        "layers": 1,
        "max_evals": 200,
        "times": [0.0, 0.5, 1.0],
        "notes": "Smoke scale.",
    },
)
def _fig6(params: dict, seed: int, workers: int) -> Tables:
    spec = QuasiparticleWavepacketSpec(k0=params["k0"], sigma_p=params["sigma_p"])
    density_rows: list[dict] = []
    velocity_rows: list[dict] = []
    for delta in params["deltas"]:
        model = XXZModel(params["N"], delta)
        initial, _ = initial_wavepacket_state(spec, model.N)
        fit = optimize(
            model,
            spec,
            params["layers"],
            max_evals=params["max_evals"],
            workers=workers,
            initial=initial,
        )
        prepared = apply(ansatz_circuit(fit.params, model.N), initial, backend="sector").state
        density = evolve_energy_density(prepared, model, params["times"])
        density_rows += [{"delta": delta, **row} for row in density.rows()]
        velocity_rows.append({"delta": delta, "velocity": velocity(density)})
    return {"energy_density": density_rows, "velocity": velocity_rows}


@figure(
    "fig7a",
    "Eigenstate IPR versus rescaled energy on the 8×7 lattice at W=6.",
    desk={"realizations": 2000, "bins": 20, "notes": "Published scale."},
    smoke={"realizations": 3, "bins": 6, "notes": "Smoke scale."},
)
def _fig7a(params: dict, seed: int, workers: int) -> Tables:
    curve = ipr_vs_energy(
        Lattice2D(8, 7), 6.0, params["realizations"], params["bins"], seed, workers=workers
    )
    return {"ipr_vs_energy": curve.rows()}


@figure(
    "fig7b",
    "Energy overlaps of the 8×7 packets and Trotter convergence of their IPR.",
    desk={
        "realizations": 2000,
        "bins": 20,
        "times": [0.5, 1.0, 1.5, 2.0],
        "dt": [0.25, 0.125, 0.0625],
        "notes": "Published scale.",
    },
    smoke={
        "realizations": 3,
        "bins": 6,
        "times": [1.0],
        "dt": [0.25, 0.125],
        "notes": "Smoke scale.",
    },
)
def _fig7b(params: dict, seed: int, workers: int) -> Tables:
    manifest = anderson_8x7(seed)
    lattice = manifest.lattice
    disorder = DisorderRealization.from_master(seed, 0, manifest.W, lattice.num_sites)
    overlaps: list[dict] = []
    trotter: list[dict] = []
    for wavepacket in manifest.wavepackets:
        centers, weights = overlap_histogram(
            lattice,
            manifest.W,
            wavepacket.spec,
            params["realizations"],
            params["bins"],
            seed,
            workers=workers,
        )
        overlaps += [
            {"label": wavepacket.label, "energy": float(c), "weight": float(w)}
            for c, w in zip(centers, weights)
        ]
        for t in params["times"]:
            comparison = trotter_vs_exact(lattice, disorder, wavepacket.spec, t, params["dt"])
            trotter += [{"label": wavepacket.label, **row} for row in comparison.rows()]
    return {"overlaps": overlaps, "trotter": trotter}


@figure(
    "fig8a",
    "Classical fidelity of three W-state preparations under readout noise.",
    desk={
        "sizes": [8, 12, 16, 20, 32],
        "shots": 10_000,
        "epsilon": 0.01,
        "notes": "IID readout flips stand in for the emulator noise model.",
    },
    smoke={"sizes": [4, 8], "shots": 500, "epsilon": 0.01, "notes": "Smoke scale."},
)
def _fig8a(params: dict, seed: int, workers: int) -> Tables:
    rows = benchmark_preparation(
        params["sizes"], params["shots"], params["epsilon"], seed, workers=workers
    )
    return {"benchmark": rows}


@figure(
    "fig9",
    "Probability densities of the Trotter-evolved 8×7 packets.",
    desk={"times": [0, 1, 2, 3], "notes": "Noiseless densities."},
    smoke={"times": [0, 1], "notes": "Smoke scale."},
)
def _fig9(params: dict, seed: int, workers: int) -> Tables:
    manifest = anderson_8x7(seed, times=params["times"])
    lattice = manifest.lattice
    disorder = DisorderRealization.from_master(
        seed, manifest.disorder_index, manifest.W, lattice.num_sites
    )
    rows: list[dict] = []
    for wavepacket in manifest.wavepackets:
        for t in manifest.times:
            initial = build_wavepacket(lattice, preparation_spec(manifest, wavepacket.spec, t))
            plan = TrotterPlan.from_time(lattice, disorder, t, manifest.dt)
            state = trotter_evolve(plan, initial)
            density = probability_density(state, lattice)
            rows += [
                {"label": wavepacket.label, "t": t, "x": x, "y": y, "p": float(density[y, x])}
                for y in range(lattice.Ly)
                for x in range(lattice.Lx)
            ]
    return {"density": rows}


@figure(
    "table1",
    "Two-qubit gate counts of the 8×7 preparation and Trotter circuits.",
    desk={"times": [0, 1, 2, 3], "notes": "Exact counts."},
    smoke={"times": [0, 1], "notes": "Smoke scale."},
)
def _table1(params: dict, seed: int, workers: int) -> Tables:
    manifest = anderson_8x7(seed, times=params["times"])
    lattice = manifest.lattice
    disorder = DisorderRealization.clean(lattice.num_sites)
    rows: list[dict] = []
    for wavepacket in manifest.wavepackets:
        for t in manifest.times:
            target = build_wavepacket(lattice, preparation_spec(manifest, wavepacket.spec, t))
            prep = synthesize_wavepacket_circuit(target).two_qubit_gate_count()
            plan = TrotterPlan.from_time(lattice, disorder, t, manifest.dt)
            evolution = build_trotter_circuit(plan).two_qubit_gate_count()
            rows.append(
                {
                    "label": wavepacket.label,
                    "t": t,
                    "support": len(target.support()),
                    "prep_gates": prep,
                    "trotter_gates": evolution,
                    "total": prep + evolution,
                }
            )
    return {"gate_counts": rows}


@figure(
    "table2",
    "Closed-form success probability and ideal fidelity of mcm-ff-2.",
    desk={"sizes": [8, 12, 16, 20, 32], "delta": 0.2, "notes": "Exact values."},
    smoke={"sizes": [8, 12, 16, 20, 32], "delta": 0.2, "notes": "Exact values."},
)
def _table2(params: dict, seed: int, workers: int) -> Tables:
    return {"mcmff2": mcmff2_table(params["sizes"], params["delta"])}


@figure(
    "table3",
    "Pipeline IPR with bootstrap errors under depth-dependent readout noise.",
    desk={
        "times": [0, 1, 2, 3],
        "shots": 500,
        "gate_error": 0.001,
        "bootstrap": 100,
        "notes": "Noise grows with the gate count; device values are not reproduced.",
    },
    smoke={
        "times": [0, 1],
        "shots": 200,
        "gate_error": 0.001,
        "bootstrap": 0,
        "notes": "Smoke scale.",
    },
)
def _table3(params: dict, seed: int, workers: int) -> Tables:
    manifest = anderson_8x7(
        seed,
        times=params["times"],
        shots=params["shots"],
        bootstrap=params["bootstrap"],
        epsilon=None,
        gate_error=params["gate_error"],
    )
    result = run_anderson_pipeline(manifest, workers=workers)
    columns = ("label", "t", "method", "ipr", "ipr_std", "exact_ipr", "epsilon", "gate_count")
    return {"ipr": [{key: row[key] for key in columns} for row in result.rows()]}


def regenerate_figure_data(
    figure_id: str,
    preset: str = "desk",
    out: str | Path = "output",
    seed: int = 0,
    workers: int = 1,
) -> list[Path]:
    """Write the tables of ``figure_id`` as CSV plus one JSON metadata file.

    Files go to ``<out>/<figure_id>-<preset>/``. The worker count changes
    neither the tables nor the metadata.
    """
    if figure_id not in FIGURES:
        raise UnknownFigure(figure_id, sorted(FIGURES))
    entry = FIGURES[figure_id]
    params = entry.parameters(preset)

    run_log.info(figure_id, f"Regenerating {figure_id} at preset {preset}.")
    tables = entry.builder(params, seed, workers)

    writer = OutputWriter(out, f"{figure_id}-{preset}")
    for name, rows in tables.items():
        writer.write_csv(name, rows)
    writer.write_json(
        figure_id,
        {
            "figure": figure_id,
            "description": entry.description,
            "preset": preset,
            "parameters": params,
            "master_seed": seed,
            "tables": sorted(tables),
        },
    )
    writer.record("figure", figure_id, seed, workers)
    return list(writer.written)
