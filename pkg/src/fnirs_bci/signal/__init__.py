"""Hemoglobin conversion, band-pass filtering and epoching."""

from .epochs import baseline_correct, segment_epochs
from .filters import (
    FilterSpec,
    bandpass_hemo,
    design_butterworth_bandpass,
    filtfilt,
    frequency_response,
    section_pole_magnitudes,
)
from .mbll import MBLL_KEYS, MbllParams, load_mbll_constants, mbll_convert, mbll_forward

__all__ = [
    "MBLL_KEYS",
    "MbllParams",
    "load_mbll_constants",
    "mbll_convert",
    "mbll_forward",
    "FilterSpec",
    "design_butterworth_bandpass",
    "frequency_response",
    "section_pole_magnitudes",
    "filtfilt",
    "bandpass_hemo",
    "segment_epochs",
    "baseline_correct",
]
