"""Hemodynamic series and trial epochs."""

import math
from typing import Any, Sequence

import numpy as np
from pydantic import Field, field_validator, model_validator

from ..value_objects import ValueObject, frozen_array
from .recording import TaskLabel, labels_to_indices

# Guard for products such as 13.3 * 10 that land a hair above an integer.
_INDEX_GUARD = 1e-9


def ceil_index(value: float) -> int:
    """ceil() of a sample position, tolerant to representation error."""
    return math.ceil(value - _INDEX_GUARD)


def floor_index(value: float) -> int:
    """floor() of a sample position, tolerant to representation error."""
    return math.floor(value + _INDEX_GUARD)


def onset_sample(onset_s: float, fs: float) -> int:
    """Sample index of an onset, rounding half up."""
    return math.floor(onset_s * fs + 0.5)


def epoch_offsets(window_s: tuple[float, float], fs: float) -> tuple[int, int]:
    """Inclusive relative sample range [ceil(a*fs), floor(b*fs)] of an epoch window."""
    return ceil_index(window_s[0] * fs), floor_index(window_s[1] * fs)


def hemo_stream_names(channel_names: Sequence[str]) -> tuple[str, ...]:
    """``chNN_HbO``, ``chNN_HbR`` for each channel, channel-major."""
    names = []
    for channel in channel_names:
        names.extend([f"{channel}_HbO", f"{channel}_HbR"])
    return tuple(names)


class HemoSeries(ValueObject):
    """Continuous concentration changes (mM), one column per stream."""

    fs: float = Field(gt=0)
    streams: np.ndarray
    stream_names: tuple[str, ...]

    @field_validator("streams", mode="before")
    @classmethod
    def _freeze_streams(cls, value: Any) -> np.ndarray:
        return frozen_array(value)

    @model_validator(mode="after")
    def _check_layout(self) -> "HemoSeries":
        if self.streams.ndim != 2:
            raise ValueError("streams must be a 2-D matrix [n_samples x n_streams]")
        if self.streams.shape[1] != len(self.stream_names):
            raise ValueError(
                f"{self.streams.shape[1]} stream columns but {len(self.stream_names)} names"
            )
        if not np.all(np.isfinite(self.streams)):
            raise ValueError("streams must be finite")
        return self

    @property
    def n_samples(self) -> int:
        return int(self.streams.shape[0])


class EpochSet(ValueObject):
    """
    Trials x streams x samples, cut around each onset.

    Sample ``j`` of an epoch sits at ``(first_offset + j) / fs`` seconds
    relative to the onset.
    """

    fs: float = Field(gt=0)
    labels: tuple[TaskLabel, ...]
    data: np.ndarray
    stream_names: tuple[str, ...]
    epoch_window_s: tuple[float, float] = (-5.0, 25.0)

    @field_validator("data", mode="before")
    @classmethod
    def _freeze_data(cls, value: Any) -> np.ndarray:
        return frozen_array(value)

    @model_validator(mode="after")
    def _check_layout(self) -> "EpochSet":
        if self.data.ndim != 3:
            raise ValueError("data must be a 3-D tensor [n_trials x n_streams x n_samples]")
        n_trials, n_streams, n_samples = self.data.shape
        if len(self.labels) != n_trials:
            raise ValueError(f"{len(self.labels)} labels for {n_trials} trials")
        if len(self.stream_names) != n_streams:
            raise ValueError(f"{len(self.stream_names)} stream names for {n_streams} streams")
        if len(set(self.stream_names)) != n_streams:
            raise ValueError("stream names must be unique")
        if self.epoch_window_s[0] >= self.epoch_window_s[1]:
            raise ValueError("epoch window start must precede its end")
        first, last = epoch_offsets(self.epoch_window_s, self.fs)
        if n_samples != last - first + 1:
            raise ValueError(
                f"epochs hold {n_samples} samples but the window {self.epoch_window_s} at "
                f"{self.fs} Hz spans {last - first + 1}"
            )
        if not np.all(np.isfinite(self.data)):
            raise ValueError("epoch data must be finite")
        return self

    @property
    def n_trials(self) -> int:
        return int(self.data.shape[0])

    @property
    def n_streams(self) -> int:
        return int(self.data.shape[1])

    @property
    def n_samples(self) -> int:
        return int(self.data.shape[2])

    @property
    def first_offset(self) -> int:
        return epoch_offsets(self.epoch_window_s, self.fs)[0]

    @property
    def label_indices(self) -> np.ndarray:
        return labels_to_indices(self.labels)

    def index_of(self, offset: int) -> int:
        """Array position of the sample at relative offset ``offset``."""
        return offset - self.first_offset

    def times(self) -> np.ndarray:
        """Seconds relative to onset for every epoch sample."""
        return (self.first_offset + np.arange(self.n_samples)) / self.fs

    def subset(self, indices: Sequence[int]) -> "EpochSet":
        """Trials at ``indices`` in the given order."""
        indices = np.asarray(indices, dtype=np.int64)
        return self.model_copy(
            update={
                "data": frozen_array(self.data[indices]),
                "labels": tuple(self.labels[i] for i in indices),
            }
        )

    def with_data(self, data: np.ndarray, stream_names: Sequence[str]) -> "EpochSet":
        """Same trials and timing with replaced streams (validated)."""
        return EpochSet(
            fs=self.fs,
            labels=self.labels,
            data=data,
            stream_names=tuple(stream_names),
            epoch_window_s=self.epoch_window_s,
        )
