"""Domain models."""

from .epochs import (
    EpochSet,
    HemoSeries,
    ceil_index,
    epoch_offsets,
    floor_index,
    hemo_stream_names,
    onset_sample,
)
from .evaluation import ConfusionMatrix, EvalReport, RocCurve
from .features import FeatureMatrix
from .recording import (
    CLASS_ORDER,
    ChannelMeta,
    Event,
    EventList,
    Recording,
    TaskLabel,
    default_channels,
    label_index,
    labels_to_indices,
)

__all__ = [
    "TaskLabel",
    "CLASS_ORDER",
    "label_index",
    "labels_to_indices",
    "ChannelMeta",
    "default_channels",
    "Recording",
    "Event",
    "EventList",
    "HemoSeries",
    "EpochSet",
    "ceil_index",
    "floor_index",
    "onset_sample",
    "epoch_offsets",
    "hemo_stream_names",
    "FeatureMatrix",
    "ConfusionMatrix",
    "RocCurve",
    "EvalReport",
]
