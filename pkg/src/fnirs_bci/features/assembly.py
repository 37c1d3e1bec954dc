"""
Feature matrices from epochs.

Column names encode their origin and parse back uniquely:

    {stream}_w{window:02d}_{mean|peak|skewness|kurtosis}   windowed statistics
    {stream}_w{window:02d}_{bp1_3|bp4_6}                   windowed band power
    {stream}_{w1|w2}                                        temporal means (5-10 s, 10-15 s)
"""

import re
from fnirs_bci._compat import StrEnum
from typing import NamedTuple, Optional

import numpy as np

from ..domain import EpochSet, FeatureMatrix, InvalidInputError, ceil_index
from .spectral import BANDS_HZ, band_power_matrix
from .statistics import STAT_NAMES, stat_matrix
from .windows import WindowSpec, sliding_windows

TEMPORAL_WINDOWS_S: dict[str, tuple[float, float]] = {"w1": (5.0, 10.0), "w2": (10.0, 15.0)}


class FeatureSet(StrEnum):
    STATS = "stats"
    BANDPOWER = "bandpower"
    TEMPORAL_MEAN = "temporal_mean"
    UNION = "union"


class FeatureName(NamedTuple):
    stream: str
    window: Optional[int]
    kind: str


_WINDOWED_RE = re.compile(
    r"^(?P<stream>.+)_w(?P<window>\d{2,})_(?P<kind>"
    + "|".join(STAT_NAMES + tuple(BANDS_HZ))
    + r")$"
)
_TEMPORAL_RE = re.compile(r"^(?P<stream>.+)_(?P<kind>" + "|".join(TEMPORAL_WINDOWS_S) + r")$")


def parse_feature_name(name: str) -> FeatureName:
    """Recover (stream, window index, feature kind) from a column name."""
    match = _WINDOWED_RE.match(name)
    if match:
        return FeatureName(match["stream"], int(match["window"]), match["kind"])
    match = _TEMPORAL_RE.match(name)
    if match:
        return FeatureName(match["stream"], None, match["kind"])
    raise InvalidInputError(f"not a feature column name: {name!r}")


def _windowed_names(streams: tuple[str, ...], n_windows: int, kinds: tuple[str, ...]) -> list[str]:
    return [
        f"{stream}_w{window:02d}_{kind}"
        for stream in streams
        for window in range(n_windows)
        for kind in kinds
    ]


def stats_features(es: EpochSet, w: WindowSpec = WindowSpec()) -> FeatureMatrix:
    """Windowed mean/peak/skewness/kurtosis, stream-major, window-minor, statistic innermost."""
    windows = sliding_windows(es.data, w, es.fs)
    values = stat_matrix(windows)
    n_windows = windows.shape[2]
    return FeatureMatrix(
        values=values.reshape(es.n_trials, -1),
        feature_names=tuple(_windowed_names(es.stream_names, n_windows, STAT_NAMES)),
        labels=es.labels,
    )


def bandpower_features(es: EpochSet, w: WindowSpec = WindowSpec()) -> FeatureMatrix:
    """Windowed band power in [1, 3] Hz and [4, 6] Hz."""
    windows = sliding_windows(es.data, w, es.fs)
    values = np.stack(
        [band_power_matrix(windows, band, es.fs) for band in BANDS_HZ.values()], axis=-1
    )
    n_windows = windows.shape[2]
    return FeatureMatrix(
        values=values.reshape(es.n_trials, -1),
        feature_names=tuple(_windowed_names(es.stream_names, n_windows, tuple(BANDS_HZ))),
        labels=es.labels,
    )


def temporal_mean_features(es: EpochSet) -> FeatureMatrix:
    """
    Mean of every stream over 5-10 s and 10-15 s after onset.

    Each window covers k in [ceil(a*fs), ceil(b*fs) - 1], so the sample at
    10 s belongs to the second window only. 16 channels give 64 columns.
    """
    columns = []
    for key, (a, b) in TEMPORAL_WINDOWS_S.items():
        start = es.index_of(ceil_index(a * es.fs))
        stop = es.index_of(ceil_index(b * es.fs))
        if start < 0 or stop > es.n_samples or stop <= start:
            raise InvalidInputError(
                f"temporal window {a}-{b} s lies outside the epoch window {es.epoch_window_s}"
            )
        columns.append(es.data[:, :, start:stop].mean(axis=2))
    # stream-major: ch01_HbO_w1, ch01_HbO_w2, ch01_HbR_w1, ...
    values = np.stack(columns, axis=2).reshape(es.n_trials, -1)
    names = [f"{stream}_{key}" for stream in es.stream_names for key in TEMPORAL_WINDOWS_S]
    return FeatureMatrix(values=values, feature_names=tuple(names), labels=es.labels)


def assemble_feature_matrix(
    es: EpochSet, which: FeatureSet | str = FeatureSet.UNION, w: WindowSpec = WindowSpec()
) -> FeatureMatrix:
    """
    Build the requested feature set; ``union`` concatenates stats, band power and temporal means.

    Row order equals trial order.
    """
    which = FeatureSet(which)
    if which is FeatureSet.STATS:
        return stats_features(es, w)
    if which is FeatureSet.BANDPOWER:
        return bandpower_features(es, w)
    if which is FeatureSet.TEMPORAL_MEAN:
        return temporal_mean_features(es)
    return FeatureMatrix.concat(
        [stats_features(es, w), bandpower_features(es, w), temporal_mean_features(es)]
    )
