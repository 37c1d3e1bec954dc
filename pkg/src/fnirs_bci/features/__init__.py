"""Windowed statistical and spectral features, temporal means."""

from .assembly import (
    TEMPORAL_WINDOWS_S,
    FeatureName,
    FeatureSet,
    assemble_feature_matrix,
    bandpower_features,
    parse_feature_name,
    stats_features,
    temporal_mean_features,
)
from .spectral import BANDS_HZ, band_power, band_power_matrix, periodogram
from .statistics import STAT_NAMES, stat_features, stat_matrix
from .windows import WindowSpec, max_coverage, sliding_windows

__all__ = [
    "WindowSpec",
    "sliding_windows",
    "max_coverage",
    "STAT_NAMES",
    "stat_features",
    "stat_matrix",
    "BANDS_HZ",
    "band_power",
    "band_power_matrix",
    "periodogram",
    "TEMPORAL_WINDOWS_S",
    "FeatureSet",
    "FeatureName",
    "parse_feature_name",
    "stats_features",
    "bandpower_features",
    "temporal_mean_features",
    "assemble_feature_matrix",
]
