"""
Seeded random streams.

Every random draw in the package comes from a Philox counter-based generator
(platform independent) whose seed sequence is ``(seed, spawn_key)``, so two
consumers of the same user seed never share a stream.
"""

from enum import IntEnum

import numpy as np


class RandomStream(IntEnum):
    """Fixed spawn keys, one per consumer."""

    SYNTH = 1
    SPLIT = 2
    ICA = 3
    INIT = 4
    SHUFFLE = 5
    DROPOUT = 6
    CROSSVAL = 7
    GRID = 8
    SVM = 9
    LOGREG = 10


def make_rng(seed: int, *spawn_key: int) -> np.random.Generator:
    """
    Generator for ``seed`` on the stream identified by ``spawn_key``.

    Args:
        seed: Non-negative user seed
        spawn_key: Stream path, e.g. ``(RandomStream.INIT,)`` or ``(RandomStream.GRID, 3)``

    Returns:
        ``numpy.random.Generator`` over Philox
    """
    if seed < 0:
        raise ValueError(f"seed must be non-negative, got {seed}")
    sequence = np.random.SeedSequence(seed, spawn_key=tuple(int(k) for k in spawn_key))
    return np.random.Generator(np.random.Philox(sequence))


def derive_seed(seed: int, *spawn_key: int) -> int:
    """A 63-bit child seed, for handing a seed to a nested seeded operation."""
    sequence = np.random.SeedSequence(seed, spawn_key=tuple(int(k) for k in spawn_key))
    return int(sequence.generate_state(1, dtype=np.uint64)[0] >> np.uint64(1))
