"""Weight initializers."""

import math
from typing import Sequence

import numpy as np

from ..domain import RandomStream, make_rng


def lecun_normal_init(
    shape: Sequence[int], fan_in: int, seed: int | np.random.Generator
) -> np.ndarray:
    """
    I.i.d. normal(0, 1 / fan_in) weights.

    Args:
        shape: Output shape
        fan_in: Number of inputs feeding each unit (>= 1)
        seed: Seed, or a generator to draw from

    Returns:
        float64 array of ``shape``
    """
    if fan_in < 1:
        raise ValueError(f"fan_in must be >= 1, got {fan_in}")
    rng = seed if isinstance(seed, np.random.Generator) else make_rng(seed, RandomStream.INIT)
    return rng.normal(0.0, math.sqrt(1.0 / fan_in), size=tuple(shape))
