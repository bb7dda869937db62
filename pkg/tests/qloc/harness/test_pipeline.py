import copy
from pathlib import Path

import pytest

from qloc.anderson import WavepacketSpec
from qloc.exceptions import PipelineStageError
from qloc.harness import (
    ExperimentManifest,
    anderson_8x7,
    manifest_hash,
    preparation_spec,
    run_anderson_pipeline,
)
from qloc.mitigation import survival_rate_exact

DOCUMENT = {
    "id": "small",
    "lattice": {"Lx": 4, "Ly": 4},
    "W": 1.0,
    "wavepackets": [
        {"label": "packet", "k0": ["0.5pi", 0], "sigma_p": [0.5, 0.5], "x0": [2, 2]},
    ],
    "dt": 0.25,
    "times": [0, 0.5],
    "shots": 2000,
    "master_seed": 3,
    "epsilon": 0.0,
}


def _manifest(**overrides) -> ExperimentManifest:
    document = copy.deepcopy(DOCUMENT)
    document.update(overrides)
    return ExperimentManifest.from_dict(document)


def test_noiseless_pipeline():
    result = run_anderson_pipeline(_manifest())
    assert 2 * 3 == len(result.records)

    for t in (0.0, 0.5):
        ideal, ps, mle = [record for record in result.records if record.t == t]
        assert ("ideal", "PS", "MLE") == (ideal.method, ps.method, mle.method)
        assert ideal.ipr == ps.ipr
        assert 1.0 == ps.survival_rate
        assert ideal.ipr == pytest.approx(mle.ipr, abs=1e-3)
        assert ideal.ipr == pytest.approx(ideal.exact_ipr, abs=0.02)
        assert ideal.fidelity > 0.99
        assert ps.ipr_std is None


def test_pipeline_gate_counts():
    result = run_anderson_pipeline(_manifest())
    counts = result.gate_counts()
    # 16-site tree, then two Trotter steps of 4 gates per site
    assert 30 == counts[("packet", 0.0)]
    assert 30 + 2 * 4 * 16 == counts[("packet", 0.5)]


def test_pipeline_is_reproducible():
    first = run_anderson_pipeline(_manifest(epsilon=0.05))
    second = run_anderson_pipeline(_manifest(epsilon=0.05))
    assert first.rows() == second.rows()


def test_pipeline_is_independent_of_workers():
    manifest = _manifest(epsilon=0.05, bootstrap=100, times=[0.25])
    serial = run_anderson_pipeline(manifest, workers=1)
    threaded = run_anderson_pipeline(manifest, workers=4)
    assert serial.rows() == threaded.rows()
    assert all(record.ipr_std is not None for record in serial.records)


def test_pipeline_methods():
    result = run_anderson_pipeline(_manifest(methods=["mle"], times=[0]))
    assert ["ideal", "MLE"] == [record.method for record in result.records]
    assert [] == result.select(method="PS")


def test_gate_error_noise_grows_with_depth():
    result = run_anderson_pipeline(_manifest(epsilon=None, gate_error=0.001, times=[0, 1]))
    early, late = (result.select(method="ideal")[i].epsilon for i in (0, 1))
    assert 0 < early < late < 0.5


def test_noise_reduces_survival():
    result = run_anderson_pipeline(_manifest(epsilon=0.05, times=[0]))
    (ps,) = result.select(method="PS")
    assert survival_rate_exact(16, 0.05) == pytest.approx(ps.survival_rate, abs=0.03)


def test_pipeline_stage_error():
    with pytest.raises(PipelineStageError) as excinfo:
        run_anderson_pipeline(_manifest(times=[0.3]))
    assert "evolve" == excinfo.value.stage


def test_preparation_spec():
    manifest = anderson_8x7(0)
    spec = manifest.wavepackets[0].spec
    assert spec == preparation_spec(manifest, spec, 1.0)
    full = preparation_spec(manifest, spec, 2.0)
    assert 0.0 == full.trunc_threshold
    assert isinstance(full, WavepacketSpec)
    assert spec.k0 == full.k0


def test_hardware_manifest_gate_counts():
    manifest = anderson_8x7(0, methods=["ps"])
    counts = run_anderson_pipeline(manifest).gate_counts()

    assert {
        ("low", 0.0): 70,
        ("high", 0.0): 62,
        ("low", 1.0): 966,
        ("high", 1.0): 958,
        ("low", 2.0): 1902,
        ("high", 2.0): 1902,
        ("low", 3.0): 2798,
        ("high", 3.0): 2798,
    } == counts


def test_shipped_manifest_matches_builder():
    path = Path(__file__).parents[3] / "manifests" / "anderson_8x7.json"
    assert manifest_hash(anderson_8x7(0)) == manifest_hash(ExperimentManifest.load(path))
