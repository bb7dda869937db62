"""End-to-end Anderson pipeline.

For every wavepacket and evolution time the stages run in order:

``prepare``  tree circuit of the (possibly truncated) wavepacket
``evolve``   Trotter circuit appended, simulated on the sector backend
``ideal``    noiseless shots of the ideal state
``noise``    the same shots with IID readout flips
``ps``/``mle``  mitigation of the noisy shots

Each (wavepacket, time) pair owns one stream index, so the shots and flips
of a pair do not depend on which other pairs are run.
"""

from __future__ import annotations

import contextlib
from collections.abc import Iterator
from dataclasses import asdict, dataclass

from qloc import logger
from qloc.anderson import (
    DisorderRealization,
    SingleParticleState,
    WavepacketSpec,
    build_wavepacket,
    ipr,
)
from qloc.circuit import (
    QuantumStateSector,
    TrotterPlan,
    apply,
    build_trotter_circuit,
)
from qloc.exceptions import PipelineStageError, QlocException
from qloc.harness.manifest import ExperimentManifest
from qloc.mitigation import (
    BitFlipModel,
    bootstrap,
    corrupt,
    effective_epsilon,
    ipr_from_distribution,
    mle_fit,
    postselect,
)
from qloc.stateprep import (
    classical_fidelity,
    ideal_reference,
    synthesize_wavepacket_circuit,
)

run_log = logger.Run.logger()


@dataclass
class PipelineRecord:
    label: str
    t: float
    method: str
    ipr: float
    ipr_std: float | None
    fidelity: float
    survival_rate: float
    gate_count: int
    exact_ipr: float
    epsilon: float


@dataclass
class PipelineResult:
    manifest: ExperimentManifest
    records: list[PipelineRecord]

    def rows(self) -> list[dict]:
        return [asdict(record) for record in self.records]

    def select(
        self, *, label: str | None = None, method: str | None = None
    ) -> list[PipelineRecord]:
        return [
            record
            for record in self.records
            if (label is None or record.label == label)
            and (method is None or record.method == method)
        ]

    def gate_counts(self) -> dict[tuple[str, float], int]:
        return {(record.label, record.t): record.gate_count for record in self.records}


@contextlib.contextmanager
def stage(name: str) -> Iterator[None]:
    """Re-raise any failure inside the block as :class:`PipelineStageError`."""
    try:
        yield
    except PipelineStageError:
        raise
    except QlocException as exc:
        raise PipelineStageError(name, str(exc)) from exc
    except (ArithmeticError, ValueError) as exc:
        raise PipelineStageError(name, f"{type(exc).__name__}: {exc}") from exc


def preparation_spec(
    manifest: ExperimentManifest, spec: WavepacketSpec, t: float
) -> WavepacketSpec:
    """The truncated packet is prepared only at ``truncate_times``."""
    if any(abs(t - value) < 1e-12 for value in manifest.truncate_times):
        return spec
    return WavepacketSpec(k0=spec.k0, sigma_p=spec.sigma_p, x0=spec.x0)


def run_anderson_pipeline(
    manifest: ExperimentManifest, *, workers: int = 1
) -> PipelineResult:
    lattice = manifest.lattice
    N = lattice.num_sites
    seed = manifest.master_seed
    disorder = DisorderRealization.from_master(seed, manifest.disorder_index, manifest.W, N)
    records: list[PipelineRecord] = []

    for w_index, wavepacket in enumerate(manifest.wavepackets):
        for t_index, t in enumerate(manifest.times):
            index = w_index * len(manifest.times) + t_index

            with stage("prepare"):
                target = build_wavepacket(lattice, preparation_spec(manifest, wavepacket.spec, t))
                circuit = synthesize_wavepacket_circuit(target)

            with stage("evolve"):
                plan = TrotterPlan.from_time(lattice, disorder, t, manifest.dt)
                circuit = circuit.then(build_trotter_circuit(plan))
                gate_count = circuit.two_qubit_gate_count()
                result = apply(circuit, backend="sector")
                assert isinstance(result.state, QuantumStateSector)
                ideal: SingleParticleState = result.state.to_single_particle()
                exact_ipr = ipr(ideal)

            if manifest.epsilon is not None:
                epsilon = manifest.epsilon
            else:
                assert manifest.gate_error is not None
                epsilon = effective_epsilon(gate_count, N, manifest.gate_error)

            def bootstrap_std(shots, estimator: str, method_index: int) -> float | None:
                if not manifest.bootstrap:
                    return None
                return bootstrap(
                    shots,
                    estimator,
                    manifest.bootstrap,
                    seed,
                    workers=workers,
                    index=3 * index + method_index,
                ).std

            common = {
                "label": wavepacket.label,
                "t": t,
                "gate_count": gate_count,
                "exact_ipr": exact_ipr,
                "epsilon": epsilon,
            }

            with stage("ideal"):
                reference = ideal_reference(ideal, manifest.shots, seed, index=index)
                records.append(
                    PipelineRecord(
                        method="ideal",
                        ipr=reference.ipr,
                        ipr_std=bootstrap_std(reference.shots, "ps-ipr", 0),
                        fidelity=reference.fidelity,
                        survival_rate=1.0,
                        **common,
                    )
                )

            with stage("noise"):
                noisy = corrupt(reference.shots, BitFlipModel(epsilon), seed, index=index)

            with stage("ps"):
                survivors, survival = postselect(noisy)
                if "ps" in manifest.methods and survivors.total == 0:
                    run_log.warning(manifest.id, f"{wavepacket.label} t={t}: no PS survivors.")
                    records.append(
                        PipelineRecord(
                            method="PS",
                            ipr=float("nan"),
                            ipr_std=None,
                            fidelity=0.0,
                            survival_rate=0.0,
                            **common,
                        )
                    )
                elif "ps" in manifest.methods:
                    distribution = survivors.one_hot_distribution()
                    records.append(
                        PipelineRecord(
                            method="PS",
                            ipr=ipr_from_distribution(distribution),
                            ipr_std=bootstrap_std(noisy, "ps-ipr", 1),
                            fidelity=classical_fidelity(distribution, ideal),
                            survival_rate=survival,
                            **common,
                        )
                    )

            if "mle" in manifest.methods:
                with stage("mle"):
                    fit = mle_fit(noisy)
                    records.append(
                        PipelineRecord(
                            method="MLE",
                            ipr=ipr_from_distribution(fit.p_hat),
                            ipr_std=bootstrap_std(noisy, "mle-ipr", 2),
                            fidelity=classical_fidelity(fit.p_hat, ideal),
                            survival_rate=survival,
                            **common,
                        )
                    )

            run_log.debug(
                manifest.id,
                f"{wavepacket.label} t={t}: {gate_count} two-qubit gates, ε={epsilon:.4g}.",
            )

    return PipelineResult(manifest=manifest, records=records)
