"""Per-window summary statistics: mean, peak, skewness, kurtosis."""

import warnings

import numpy as np
from scipy import stats

STAT_NAMES = ("mean", "peak", "skewness", "kurtosis")

# Below this second central moment a window counts as constant.
ZERO_VARIANCE = 1e-15


def stat_matrix(windows: np.ndarray) -> np.ndarray:
    """
    Statistics over the last axis.

    peak is the maximum absolute value; skewness is m3 / m2^1.5 and kurtosis
    the excess m4 / m2^2 - 3, both from biased central moments and both 0
    when m2 < 1e-15.

    Returns:
        Array of shape ``windows.shape[:-1] + (4,)``
    """
    windows = np.asarray(windows, dtype=np.float64)
    if windows.shape[-1] < 2:
        raise ValueError("statistics need windows of at least 2 samples")
    mean = windows.mean(axis=-1)
    peak = np.abs(windows).max(axis=-1)
    flat = np.var(windows, axis=-1) < ZERO_VARIANCE
    with warnings.catch_warnings(), np.errstate(divide="ignore", invalid="ignore"):
        warnings.simplefilter("ignore", RuntimeWarning)
        skewness = stats.skew(windows, axis=-1, bias=True)
        kurtosis = stats.kurtosis(windows, axis=-1, fisher=True, bias=True)
    skewness = np.where(flat | ~np.isfinite(skewness), 0.0, skewness)
    kurtosis = np.where(flat | ~np.isfinite(kurtosis), 0.0, kurtosis)
    return np.stack([mean, peak, skewness, kurtosis], axis=-1)


def stat_features(window: np.ndarray) -> tuple[float, float, float, float]:
    """(mean, peak, skewness, kurtosis) of one window."""
    mean, peak, skewness, kurtosis = stat_matrix(np.asarray(window, dtype=np.float64))
    return float(mean), float(peak), float(skewness), float(kurtosis)
