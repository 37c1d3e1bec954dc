"""Raw recording, channel layout, and task events."""

from fnirs_bci._compat import StrEnum
from typing import Any

import numpy as np
from pydantic import Field, field_validator, model_validator

from ..value_objects import ValueObject, frozen_array


class TaskLabel(StrEnum):
    """The three task classes."""

    MA = "MA"
    MI = "MI"
    IS = "IS"


# Row/column order of every per-class table (confusion matrices, probability columns).
CLASS_ORDER: tuple[TaskLabel, ...] = (TaskLabel.MA, TaskLabel.MI, TaskLabel.IS)


def label_index(label: TaskLabel | str) -> int:
    """Position of ``label`` in ``CLASS_ORDER``."""
    return CLASS_ORDER.index(TaskLabel(label))


def labels_to_indices(labels: Any) -> np.ndarray:
    """Map a sequence of labels to integer class indices."""
    return np.array([label_index(label) for label in labels], dtype=np.int64)


class ChannelMeta(ValueObject):
    """One source-detector pair measured at two wavelengths."""

    id: int = Field(ge=1)
    wavelength_lo_nm: float = Field(default=760.0, gt=0)
    wavelength_hi_nm: float = Field(default=850.0, gt=0)
    source_detector_distance_mm: float = Field(default=30.0, gt=0)

    @model_validator(mode="after")
    def _check_wavelength_order(self) -> "ChannelMeta":
        if not self.wavelength_lo_nm < self.wavelength_hi_nm:
            raise ValueError(
                f"channel {self.id}: wavelength_lo_nm ({self.wavelength_lo_nm}) must be below "
                f"wavelength_hi_nm ({self.wavelength_hi_nm})"
            )
        return self

    @property
    def name(self) -> str:
        return f"ch{self.id:02d}"


def default_channels(n_channels: int) -> tuple[ChannelMeta, ...]:
    """Channels 1..n with 760/850 nm and 30 mm separation."""
    return tuple(ChannelMeta(id=index) for index in range(1, n_channels + 1))


class Recording(ValueObject):
    """
    Continuous multichannel optical-density changes.

    ``samples`` has one row per time step and two columns per channel
    (low then high wavelength), in channel order.
    """

    fs: float = Field(gt=0)
    channels: tuple[ChannelMeta, ...]
    samples: np.ndarray
    t0: float = 0.0

    @field_validator("samples", mode="before")
    @classmethod
    def _freeze_samples(cls, value: Any) -> np.ndarray:
        return frozen_array(value)

    @model_validator(mode="after")
    def _check_layout(self) -> "Recording":
        if self.samples.ndim != 2:
            raise ValueError("samples must be a 2-D matrix [n_samples x 2*n_channels]")
        if self.samples.shape[1] != 2 * len(self.channels):
            raise ValueError(
                f"samples has {self.samples.shape[1]} columns, expected "
                f"{2 * len(self.channels)} for {len(self.channels)} channels"
            )
        if not np.all(np.isfinite(self.samples)):
            raise ValueError("samples must be finite")
        ids = [channel.id for channel in self.channels]
        if len(set(ids)) != len(ids):
            raise ValueError("channel ids must be unique")
        return self

    @property
    def n_samples(self) -> int:
        return int(self.samples.shape[0])

    @property
    def n_channels(self) -> int:
        return len(self.channels)

    @property
    def column_names(self) -> list[str]:
        names = []
        for channel in self.channels:
            names.extend([f"{channel.name}_wl1", f"{channel.name}_wl2"])
        return names

    @property
    def times(self) -> np.ndarray:
        return self.t0 + np.arange(self.n_samples) / self.fs


class Event(ValueObject):
    """A trial onset and its task label."""

    onset_s: float = Field(ge=0)
    label: TaskLabel


class EventList(ValueObject):
    """Trial onsets in strictly increasing order."""

    events: tuple[Event, ...] = ()

    @model_validator(mode="after")
    def _check_monotone(self) -> "EventList":
        onsets = [event.onset_s for event in self.events]
        for index in range(1, len(onsets)):
            if not onsets[index] > onsets[index - 1]:
                raise ValueError(
                    f"event onsets must be strictly increasing: event {index + 1} at "
                    f"{onsets[index]} s follows {onsets[index - 1]} s"
                )
        return self

    @classmethod
    def from_pairs(cls, pairs: Any) -> "EventList":
        return cls(events=tuple(Event(onset_s=onset, label=label) for onset, label in pairs))

    def __len__(self) -> int:
        return len(self.events)

    @property
    def onsets(self) -> np.ndarray:
        return np.array([event.onset_s for event in self.events], dtype=np.float64)

    @property
    def labels(self) -> tuple[TaskLabel, ...]:
        return tuple(event.label for event in self.events)
