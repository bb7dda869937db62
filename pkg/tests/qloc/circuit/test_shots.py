import numpy as np
import pytest

from qloc.circuit import ShotSet
from qloc.exceptions import InvalidInput


def test_shots_from_dict_bit_order():
    shots = ShotSet.from_dict({"0001": 3, "1000": 1, "0110": 2})

    assert 4 == shots.num_qubits
    assert 6 == shots.total
    assert {1: 3, 6: 2, 8: 1} == shots.records
    assert [1, 2, 1] == shots.hamming_weights().tolist()
    assert [1, 0, 0, 0] == shots.bit_matrix()[0].tolist()


def test_shots_one_hot_distribution():
    shots = ShotSet.from_dict({"0001": 3, "1000": 1, "0110": 2, "0000": 2})
    expected = np.array([3, 0, 0, 1]) / 8
    assert np.allclose(expected, shots.one_hot_distribution())


def test_shots_json():
    shots = ShotSet.from_dict({"01": 5, "10": 7})
    assert '{\n  "01": 5,\n  "10": 7\n}' == shots.to_json()
    assert shots.records == ShotSet.from_json(shots.to_json()).records


def test_shots_from_arrays_merges():
    shots = ShotSet.from_arrays(3, np.array([1, 2, 1, 4]), np.array([2, 0, 3, 1]))
    assert {1: 5, 4: 1} == shots.records


@pytest.mark.parametrize(
    "data",
    [
        {},
        {"01": 1, "001": 1},
        {"0a": 1},
        {"01": 0},
    ],
)
def test_shots_from_dict__negative(data: dict):
    with pytest.raises(InvalidInput):
        ShotSet.from_dict(data)


def test_shots_bitstring_too_long():
    with pytest.raises(InvalidInput):
        ShotSet(num_qubits=2, records={4: 1})
