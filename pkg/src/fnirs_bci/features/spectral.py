"""Band power from a single Hann-windowed periodogram."""

import numpy as np
from scipy.signal import get_window

from ..domain import InvalidInputError

BANDS_HZ: dict[str, tuple[float, float]] = {"bp1_3": (1.0, 3.0), "bp4_6": (4.0, 6.0)}

# Tolerance on bin frequencies at the band edges, relative to fs.
_EDGE_TOLERANCE = 1e-12


def periodogram(windows: np.ndarray, fs: float) -> tuple[np.ndarray, np.ndarray]:
    """
    One-sided Hann periodogram over the last axis.

    ``P[k] = |X[k]|^2 / (U * L)`` with ``U = sum(w^2) / L``; bins are not
    doubled.

    Returns:
        (bin frequencies in Hz, powers with the last axis replaced by bins)
    """
    windows = np.asarray(windows, dtype=np.float64)
    length = windows.shape[-1]
    taper = get_window("hann", length)
    spectrum = np.fft.rfft(windows * taper, axis=-1)
    power = np.abs(spectrum) ** 2 / np.sum(taper**2)
    return np.fft.rfftfreq(length, d=1.0 / fs), power


def band_power_matrix(windows: np.ndarray, band: tuple[float, float], fs: float) -> np.ndarray:
    """Band power over the last axis for every leading index."""
    windows = np.asarray(windows, dtype=np.float64)
    f1, f2 = band
    if windows.shape[-1] < 4:
        raise InvalidInputError("band power needs windows of at least 4 samples")
    if not 0.0 <= f1 <= f2 <= fs / 2.0:
        raise InvalidInputError(f"band {band} Hz lies outside [0, {fs / 2.0}] Hz")
    freqs, power = periodogram(windows, fs)
    tol = _EDGE_TOLERANCE * fs
    mask = (freqs >= f1 - tol) & (freqs <= f2 + tol)
    return power[..., mask].sum(axis=-1)


def band_power(window: np.ndarray, band: tuple[float, float], fs: float) -> float:
    """
    Power of one window in ``band`` (inclusive edges).

    Args:
        window: Samples (length >= 4)
        band: (f1, f2) in Hz with f2 <= fs / 2
        fs: Sampling rate in Hz

    Returns:
        Sum of periodogram bins with f1 <= k * fs / L <= f2
    """
    return float(band_power_matrix(np.asarray(window, dtype=np.float64), band, fs))
