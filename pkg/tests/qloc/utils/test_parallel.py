import numpy as np
import pytest

from qloc import rng
from qloc.utils.parallel import ordered_map


@pytest.mark.parametrize("workers", [1, 4, 8])
def test_ordered_map_keeps_order(workers: int):
    assert [i * i for i in range(20)] == ordered_map(lambda i: i * i, range(20), workers)


def test_ordered_map_keyed_draws_ignore_worker_count():
    def draw(index: int) -> float:
        return float(rng.generator(7, "shots", index).random())

    serial = ordered_map(draw, range(16), 1)
    threaded = ordered_map(draw, range(16), 8)
    assert serial == threaded


def test_ordered_map_empty():
    assert [] == ordered_map(np.sqrt, [], 4)
