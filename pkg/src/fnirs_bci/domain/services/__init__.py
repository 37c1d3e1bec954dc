"""Domain services."""

from .random_streams import RandomStream, derive_seed, make_rng

__all__ = ["RandomStream", "make_rng", "derive_seed"]
