import json

import numpy as np

from qloc.harness import OutputWriter, run_id
from qloc.storage import RunRecord


def test_write_csv(tmp_path):
    writer = OutputWriter(tmp_path, "exp")
    path = writer.write_csv(
        "rows",
        [{"t": 0.1, "ipr": 1 / 3, "note": None}, {"t": 2, "ipr": 0.5, "extra": "x"}],
    )
    assert tmp_path / "exp" / "rows.csv" == path
    assert (
        "t,ipr,note,extra\n0.1,0.3333333333333333,,\n2,0.5,,x\n"
        == path.read_text(encoding="utf-8")
    )


def test_write_json(tmp_path):
    writer = OutputWriter(tmp_path, "exp")
    path = writer.write_json("meta", {"values": np.arange(3), "seed": 1})
    document = json.loads(path.read_text(encoding="utf-8"))
    assert [0, 1, 2] == document["values"]
    assert "exp" == document["experiment_id"]
    assert {"commit", "created", "seed"} <= set(document)
    assert [path] == writer.written


def test_record(tmp_path):
    writer = OutputWriter(tmp_path, "exp-record")
    writer.write_csv("rows", [{"a": 1}])
    record = writer.record("command", "test", 5, 2)
    assert RunRecord.get("exp-record") is not None
    assert str(tmp_path / "exp-record") == record.output_dir
    RunRecord.remove("exp-record")


def test_run_id():
    first = run_id("variance", {"W": 1.0, "dims": [64]})
    assert first == run_id("variance", {"dims": [64], "W": 1.0})
    assert first != run_id("variance", {"W": 2.0, "dims": [64]})
    assert first.startswith("variance-")
    assert len("variance-") + 12 == len(first)
