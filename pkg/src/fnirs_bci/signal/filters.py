"""
Butterworth band-pass design and zero-phase filtering.
"""

from typing import Any, Sequence

import numpy as np
from pydantic import Field, field_validator, model_validator
from scipy import signal as sps

from ..domain import HemoSeries, SignalProcessingError, ValueObject, frozen_array


class FilterSpec(ValueObject):
    """
    A cascade of second-order sections.

    ``sections`` rows are ``(b0, b1, b2, 1, a1, a2)``, the scipy ``sos`` layout.
    """

    sections: np.ndarray
    fs: float = Field(gt=0)
    order: int = Field(ge=1)
    band_hz: tuple[float, float]

    @field_validator("sections", mode="before")
    @classmethod
    def _freeze_sections(cls, value: Any) -> np.ndarray:
        return frozen_array(value)

    @model_validator(mode="after")
    def _check_stability(self) -> "FilterSpec":
        if self.sections.ndim != 2 or self.sections.shape[1] != 6:
            raise ValueError("sections must be an [n_sections x 6] array")
        if not np.all(np.isfinite(self.sections)):
            raise ValueError("filter coefficients must be finite")
        magnitudes = section_pole_magnitudes(self.sections)
        if magnitudes.size and magnitudes.max() >= 1.0:
            raise ValueError(f"unstable section: pole magnitude {magnitudes.max():.12f}")
        return self

    @property
    def padlen(self) -> int:
        """Odd-reflection padding length, 3 x (2 x order)."""
        return 3 * 2 * self.order


def section_pole_magnitudes(sections: np.ndarray) -> np.ndarray:
    """|poles| of every section, by root-finding on 1 + a1 z^-1 + a2 z^-2."""
    poles = [np.roots(section[3:6]) for section in np.asarray(sections)]
    return np.abs(np.concatenate(poles)) if poles else np.empty(0)


def design_butterworth_bandpass(
    order: int = 3, f_lo: float = 0.01, f_hi: float = 0.09, fs: float = 13.3
) -> FilterSpec:
    """
    Digital Butterworth band-pass as second-order sections.

    The analog prototype is band-transformed and discretized with the bilinear
    transform, pre-warping the band edges so the -3 dB points land on
    ``f_lo`` and ``f_hi``.

    Args:
        order: Prototype order (the band-pass has 2 x order poles)
        f_lo: Lower -3 dB edge in Hz
        f_hi: Upper -3 dB edge in Hz
        fs: Sampling rate in Hz

    Returns:
        FilterSpec with ``order`` sections
    """
    if order < 1:
        raise SignalProcessingError(f"filter order must be >= 1, got {order}")
    if not 0.0 < f_lo < f_hi < fs / 2.0:
        raise SignalProcessingError(
            f"band edges must satisfy 0 < f_lo < f_hi < fs/2; got f_lo={f_lo}, f_hi={f_hi}, "
            f"fs={fs}"
        )
    sections = sps.butter(order, [f_lo, f_hi], btype="bandpass", output="sos", fs=fs)
    return FilterSpec(sections=sections, fs=fs, order=order, band_hz=(f_lo, f_hi))


def frequency_response(spec: FilterSpec, freqs_hz: Sequence[float]) -> np.ndarray:
    """Complex response H(e^{j 2 pi f / fs}) of the cascade at ``freqs_hz``."""
    freqs = np.asarray(freqs_hz, dtype=np.float64)
    _, response = sps.sosfreqz(spec.sections, worN=freqs, fs=spec.fs)
    return response


def _odd_extend(x: np.ndarray, pad: int) -> np.ndarray:
    left = 2.0 * x[0] - x[pad:0:-1]
    right = 2.0 * x[-1] - x[-2 : -pad - 2 : -1]
    return np.concatenate([left, x, right], axis=0)


def _forward_backward(sections: np.ndarray, x: np.ndarray) -> np.ndarray:
    # sosfilt needs a writable buffer; frozen sections are read-only
    sections = np.array(sections, dtype=np.float64)
    zi = sps.sosfilt_zi(sections)
    if x.ndim == 2:
        zi = zi[:, :, None]
    y, _ = sps.sosfilt(sections, x, axis=0, zi=zi * x[0])
    y = y[::-1]
    y, _ = sps.sosfilt(sections, y, axis=0, zi=zi * y[0])
    return y[::-1]


def filtfilt(spec: FilterSpec, x: np.ndarray) -> np.ndarray:
    """
    Zero-phase filtering along axis 0.

    The series is odd-reflected by ``spec.padlen`` samples at both ends, and
    the forward-backward and backward-forward passes (each starting from the
    steady state of its first sample) are averaged. Averaging the two orders
    makes ``filtfilt(reverse(x)) == reverse(filtfilt(x))`` hold exactly. The
    effective magnitude response is |H|^2 with zero phase.

    Args:
        spec: Filter cascade
        x: Samples, 1-D or [n_samples x n_series]

    Returns:
        Filtered samples with the input's shape
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim not in (1, 2):
        raise SignalProcessingError(
            "filtfilt expects a 1-D series or a 2-D [samples x series] matrix"
        )
    pad = spec.padlen
    if x.shape[0] <= pad:
        raise SignalProcessingError(
            f"series of {x.shape[0]} samples is too short for {pad} samples of edge padding"
        )
    if not np.all(np.isfinite(x)):
        raise SignalProcessingError("cannot filter non-finite samples")

    extended = _odd_extend(x, pad)
    forward_first = _forward_backward(spec.sections, extended)
    backward_first = _forward_backward(spec.sections, extended[::-1])[::-1]
    y = 0.5 * (forward_first + backward_first)
    return np.ascontiguousarray(y[pad:-pad])


def bandpass_hemo(h: HemoSeries, spec: FilterSpec) -> HemoSeries:
    """Apply ``filtfilt`` to every stream of a hemodynamic series."""
    if abs(h.fs - spec.fs) > 1e-9 * spec.fs:
        raise SignalProcessingError(f"filter designed for {spec.fs} Hz applied to {h.fs} Hz data")
    return HemoSeries(fs=h.fs, streams=filtfilt(spec, h.streams), stream_names=h.stream_names)
