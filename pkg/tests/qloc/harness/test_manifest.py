import copy
import json
import math

import pytest

from qloc.exceptions import ManifestError
from qloc.harness import ExperimentManifest, anderson_8x7, canonical_json, manifest_hash

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


def test_manifest_parses_angles():
    manifest = _manifest()
    assert math.pi / 2 == pytest.approx(manifest.wavepackets[0].spec.k0[0])
    assert (2.0, 2.0) == manifest.wavepackets[0].spec.x0
    assert ("ps", "mle") == manifest.methods
    assert 16 == manifest.lattice.num_sites


def test_manifest_hash_is_stable():
    assert manifest_hash(_manifest()) == manifest_hash(_manifest())
    assert manifest_hash(_manifest()) != manifest_hash(_manifest(master_seed=4))
    assert manifest_hash(_manifest()) != manifest_hash(_manifest(W=2.0))


def test_manifest_hash_ignores_provenance():
    reference = manifest_hash(_manifest())
    assert reference == manifest_hash(_manifest(id="renamed", output="/tmp/elsewhere"))


def test_manifest_hash_ignores_key_order():
    permuted = dict(reversed(list(DOCUMENT.items())))
    assert manifest_hash(_manifest()) == manifest_hash(ExperimentManifest.from_dict(permuted))


def test_canonical_json():
    assert '{"a":[1,2],"b":1}' == canonical_json({"b": 1, "a": [1, 2]})


def test_manifest_load(tmp_path):
    path = tmp_path / "run.json"
    document = {key: value for key, value in DOCUMENT.items() if key != "id"}
    path.write_text(json.dumps(document), encoding="utf-8")
    manifest = ExperimentManifest.load(path)
    assert "run" == manifest.id


def test_manifest_load_missing_file(tmp_path):
    with pytest.raises(ManifestError) as excinfo:
        ExperimentManifest.load(tmp_path / "absent.json")
    assert "absent.json" in str(excinfo.value)


@pytest.mark.parametrize(
    "text,message",
    [
        ("{", "invalid JSON"),
        ("[1, 2]", "JSON object"),
        (json.dumps({"W": 1.0}), "missing field"),
    ],
)
def test_manifest_loads_negative(text: str, message: str):
    with pytest.raises(ManifestError) as excinfo:
        ExperimentManifest.loads(text)
    assert message in str(excinfo.value)


@pytest.mark.parametrize(
    "overrides",
    [
        {"gate_error": 0.001},
        {"epsilon": None},
        {"shots": 0},
        {"methods": ["ps", "zne"]},
        {"bootstrap": 50},
        {"master_seed": -1},
        {"wavepackets": []},
        {"W": "strong"},
        {"lattice": {"Lx": 2, "Ly": 4}},
    ],
)
def test_manifest_negative(overrides: dict):
    with pytest.raises(ManifestError):
        _manifest(**overrides)


def test_duplicate_labels():
    packet = DOCUMENT["wavepackets"][0]
    with pytest.raises(ManifestError):
        _manifest(wavepackets=[packet, packet])


def test_hardware_manifest():
    manifest = anderson_8x7(7)
    assert 56 == manifest.lattice.num_sites
    assert ["low", "high"] == [w.label for w in manifest.wavepackets]
    assert 7 == manifest.master_seed
    assert (0.0, 1.0, 2.0, 3.0) == manifest.times
