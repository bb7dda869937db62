"""Counter-based random streams.

Every random draw in the package comes from a generator keyed by
``(master_seed, stream, index)``. The key fully determines the sequence, so
disorder averages, shot sampling and bootstrap resamples give the same
numbers for any worker count and any execution order.
"""

import numpy as np

from qloc.exceptions import InvalidInput


STREAMS: dict[str, int] = {
    "disorder": 0,
    "shots": 1,
    "noise": 2,
    "bootstrap": 3,
    "measure": 4,
    "candidates": 5,
    "synthetic": 6,
}


def _seed_sequence(master_seed: int, stream: str, index: int) -> np.random.SeedSequence:
    if stream not in STREAMS:
        raise InvalidInput(f"Unknown random stream {stream!r}.")
    if master_seed < 0 or index < 0:
        raise InvalidInput("Seeds and stream indices must be nonnegative.")
    return np.random.SeedSequence(entropy=master_seed, spawn_key=(STREAMS[stream], index))


def generator(master_seed: int, stream: str, index: int = 0) -> np.random.Generator:
    """Return an independent Philox generator for one stream slot."""
    return np.random.Generator(np.random.Philox(_seed_sequence(master_seed, stream, index)))


def derive_seed(master_seed: int, stream: str, index: int = 0) -> int:
    """Return the 64-bit seed of one stream slot."""
    state = _seed_sequence(master_seed, stream, index).generate_state(1, dtype=np.uint64)
    return int(state[0])


def from_seed(seed: int) -> np.random.Generator:
    """Return the generator of a seed produced by :func:`derive_seed`."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
