"""Sliding analysis windows over an epoch."""

import math

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from pydantic import Field

from ..domain import InvalidInputError, ValueObject, floor_index


class WindowSpec(ValueObject):
    """Window length in seconds and fractional overlap between neighbours."""

    length_s: float = Field(default=2.0, gt=0)
    overlap_frac: float = Field(default=0.5, ge=0.0, lt=1.0)

    def length_samples(self, fs: float) -> int:
        """L = floor(length_s * fs)."""
        return floor_index(self.length_s * fs)

    def hop_samples(self, fs: float) -> int:
        """hop = L - floor(overlap_frac * L)."""
        length = self.length_samples(fs)
        return length - floor_index(self.overlap_frac * length)

    def count(self, n_samples: int, fs: float) -> int:
        """Number of windows that fit in ``n_samples``."""
        length, hop = self.length_samples(fs), self.hop_samples(fs)
        if n_samples < length:
            return 0
        return (n_samples - length) // hop + 1

    def starts(self, n_samples: int, fs: float) -> np.ndarray:
        return np.arange(self.count(n_samples, fs)) * self.hop_samples(fs)


def _check(n_samples: int, w: WindowSpec, fs: float) -> tuple[int, int]:
    length = w.length_samples(fs)
    if length < 2:
        raise InvalidInputError(f"window of {w.length_s} s at {fs} Hz holds {length} samples (< 2)")
    if n_samples < length:
        raise InvalidInputError(
            f"epoch of {n_samples} samples is shorter than one {length}-sample window"
        )
    return length, w.hop_samples(fs)


def sliding_windows(x: np.ndarray, w: WindowSpec, fs: float) -> np.ndarray:
    """
    Windows of ``x`` along its last axis.

    Windows start at 0, hop, 2*hop, ... while start + L <= n, so there are
    floor((n - L) / hop) + 1 of them (29 for n=399 at 13.3 Hz).

    Args:
        x: Samples, time on the last axis
        w: Window specification
        fs: Sampling rate in Hz

    Returns:
        Read-only view of shape ``x.shape[:-1] + (n_windows, L)``
    """
    x = np.asarray(x, dtype=np.float64)
    length, hop = _check(x.shape[-1], w, fs)
    return sliding_window_view(x, length, axis=-1)[..., ::hop, :]


def max_coverage(w: WindowSpec, fs: float) -> int:
    """Upper bound on how many windows contain any one sample, ceil(L / hop)."""
    return math.ceil(w.length_samples(fs) / w.hop_samples(fs))
