"""Epoch segmentation and pre-onset baseline correction."""

import numpy as np

from ..domain import (
    EpochSet,
    EventList,
    HemoSeries,
    SignalProcessingError,
    ceil_index,
    epoch_offsets,
    onset_sample,
)


def segment_epochs(
    h: HemoSeries, ev: EventList, window_s: tuple[float, float] = (-5.0, 25.0)
) -> EpochSet:
    """
    Cut one epoch per event.

    For onset sample ``o`` the epoch holds samples ``o + k`` for
    ``k`` in ``[ceil(a*fs), floor(b*fs)]`` (399 samples at 13.3 Hz).

    Args:
        h: Continuous hemodynamic series
        ev: Trial onsets and labels
        window_s: Epoch window (a, b) in seconds relative to onset

    Returns:
        EpochSet of shape [n_events x n_streams x n_epoch_samples]
    """
    first, last = epoch_offsets(window_s, h.fs)
    if last < first:
        raise SignalProcessingError(f"epoch window {window_s} holds no samples at {h.fs} Hz")
    n_epoch = last - first + 1

    data = np.empty((len(ev), len(h.stream_names), n_epoch), dtype=np.float64)
    for index, event in enumerate(ev.events):
        onset = onset_sample(event.onset_s, h.fs)
        start, stop = onset + first, onset + last + 1
        if start < 0 or stop > h.n_samples:
            raise SignalProcessingError(
                f"trial {index + 1} ({event.label.value} at {event.onset_s} s): epoch samples "
                f"[{start}, {stop - 1}] fall outside the recording [0, {h.n_samples - 1}]"
            )
        data[index] = h.streams[start:stop].T

    return EpochSet(
        fs=h.fs,
        labels=ev.labels,
        data=data,
        stream_names=h.stream_names,
        epoch_window_s=window_s,
    )


def baseline_correct(
    es: EpochSet, reference_s: tuple[float, float] = (-1.0, 0.0)
) -> EpochSet:
    """
    Subtract the pre-onset mean from every trial and stream.

    The reference covers ``k`` in ``[ceil(a*fs), ceil(b*fs) - 1]``, i.e. the
    half-open interval [a, b); at 13.3 Hz and (-1, 0) that is k = -13..-1.
    """
    lo = ceil_index(reference_s[0] * es.fs)
    hi = ceil_index(reference_s[1] * es.fs) - 1
    if hi < lo:
        raise SignalProcessingError(f"baseline reference {reference_s} holds no samples")
    start, stop = es.index_of(lo), es.index_of(hi) + 1
    if start < 0 or stop > es.n_samples:
        raise SignalProcessingError(
            f"baseline reference {reference_s} lies outside the epoch window {es.epoch_window_s}"
        )
    reference = es.data[:, :, start:stop].mean(axis=2, keepdims=True)
    return es.with_data(es.data - reference, es.stream_names)
