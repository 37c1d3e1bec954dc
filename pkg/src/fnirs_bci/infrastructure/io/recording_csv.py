"""Recording, events and channel-sidecar CSV files."""

import re
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import pandas as pd
from pydantic import ValidationError

from ...domain import (
    CLASS_ORDER,
    ChannelMeta,
    DataFormatError,
    Event,
    EventList,
    Recording,
    TaskLabel,
)
from ...observability import get_logger
from .csv_codec import numeric_block, read_table, write_table

logger = get_logger(__name__)

EVENTS_HEADER = ("onset_s", "label")
CHANNELS_HEADER = ("id", "wl_lo_nm", "wl_hi_nm", "distance_mm")

# Maximum deviation of a timestamp from the uniform grid.
TIMESTAMP_TOLERANCE_S = 1e-6
# Allowed relative mismatch between inferred and overridden sampling rate.
FS_OVERRIDE_TOLERANCE = 1e-3

_COLUMN_RE = re.compile(r"^ch(\d{2,})_wl([12])$")


def _parse_recording_header(columns: Sequence[str], path: Path) -> list[int]:
    if not columns or columns[0] != "t":
        raise DataFormatError("malformed header: first column must be 't'", path=str(path), row=0)
    value_columns = list(columns[1:])
    if not value_columns or len(value_columns) % 2:
        raise DataFormatError(
            "malformed header: expected chNN_wl1,chNN_wl2 column pairs", path=str(path), row=0
        )
    ids = []
    for index in range(0, len(value_columns), 2):
        first = _COLUMN_RE.match(value_columns[index])
        second = _COLUMN_RE.match(value_columns[index + 1])
        if (
            first is None
            or second is None
            or first.group(2) != "1"
            or second.group(2) != "2"
            or first.group(1) != second.group(1)
        ):
            raise DataFormatError(
                f"malformed header near {value_columns[index]!r}: expected chNN_wl1,chNN_wl2",
                path=str(path),
                row=0,
            )
        ids.append(int(first.group(1)))
    if len(set(ids)) != len(ids):
        raise DataFormatError("malformed header: duplicate channel", path=str(path), row=0)
    return ids


def infer_fs(times: np.ndarray, path: str | Path = "<memory>") -> float:
    """
    Sampling rate from uniformly spaced timestamps.

    Raises ``DataFormatError`` naming the first row whose timestamp deviates
    more than 1e-6 s from the uniform grid.
    """
    if len(times) < 2:
        raise DataFormatError("at least two samples are needed to infer fs", path=str(path))
    steps = np.diff(times)
    bad = np.flatnonzero(steps <= 0)
    if bad.size:
        raise DataFormatError(
            "timestamps must be strictly increasing",
            path=str(path),
            row=int(bad[0]) + 2,
            column="t",
        )
    dt = (times[-1] - times[0]) / (len(times) - 1)
    deviation = np.abs(times - (times[0] + dt * np.arange(len(times))))
    bad = np.flatnonzero(deviation > TIMESTAMP_TOLERANCE_S)
    if bad.size:
        raise DataFormatError(
            f"non-uniform timestamps (deviation {deviation[bad[0]]:.3g} s)",
            path=str(path),
            row=int(bad[0]) + 1,
            column="t",
        )
    return float(1.0 / dt)


def load_channels(path: str | Path) -> tuple[ChannelMeta, ...]:
    """Read the optional channel sidecar (``id,wl_lo_nm,wl_hi_nm,distance_mm``)."""
    frame = read_table(path, expected_header=CHANNELS_HEADER)
    values = numeric_block(frame, CHANNELS_HEADER, path)
    channels = []
    for row, (cid, lo, hi, distance) in enumerate(values, start=1):
        if cid != int(cid):
            raise DataFormatError(
                "channel id must be an integer", path=str(path), row=row, column="id"
            )
        try:
            channels.append(
                ChannelMeta(
                    id=int(cid),
                    wavelength_lo_nm=lo,
                    wavelength_hi_nm=hi,
                    source_detector_distance_mm=distance,
                )
            )
        except ValidationError as exc:
            raise DataFormatError(_first_error(exc), path=str(path), row=row) from exc
    return tuple(channels)


def resolve_channels(
    ids: Sequence[int], sidecar: Optional[str | Path] = None
) -> tuple[ChannelMeta, ...]:
    """
    Channel metadata for the header's channel ids.

    Without a sidecar, 760/850 nm and 30 mm defaults are used and a warning
    is logged.
    """
    if sidecar is None or not Path(sidecar).is_file():
        logger.warning(
            "No channel sidecar found; using defaults 760/850 nm, 30 mm",
            extra={"extra_fields": {"sidecar": str(sidecar) if sidecar else None}},
        )
        return tuple(ChannelMeta(id=cid) for cid in ids)

    by_id = {channel.id: channel for channel in load_channels(sidecar)}
    missing = [cid for cid in ids if cid not in by_id]
    if missing:
        raise DataFormatError(f"sidecar lacks channels {missing}", path=str(sidecar))
    return tuple(by_id[cid] for cid in ids)


def load_recording(
    path: str | Path,
    fs_override: Optional[float] = None,
    channels_path: Optional[str | Path] = None,
) -> Recording:
    """
    Load a recording CSV (``t,ch01_wl1,ch01_wl2,...``).

    Args:
        path: Recording file
        fs_override: Sampling rate to use instead of the inferred one; must
            agree with the timestamps to 0.1%
        channels_path: Optional channel sidecar

    Returns:
        Recording with column order preserved from the header
    """
    path = Path(path)
    frame = read_table(path)
    ids = _parse_recording_header([str(c) for c in frame.columns], path)
    values = numeric_block(frame, list(frame.columns), path)
    times = values[:, 0]

    if fs_override is not None and len(times) < 2:
        fs = float(fs_override)
    else:
        fs = infer_fs(times, path)
        if fs_override is not None:
            if abs(fs - fs_override) > FS_OVERRIDE_TOLERANCE * fs_override:
                raise DataFormatError(
                    f"timestamps imply fs={fs:.6g} Hz but {fs_override} Hz was requested "
                    "(mismatch above 0.1%)",
                    path=str(path),
                )
            fs = float(fs_override)

    channels = resolve_channels(ids, channels_path)
    try:
        return Recording(
            fs=fs,
            channels=channels,
            samples=values[:, 1:],
            t0=float(times[0]) if len(times) else 0.0,
        )
    except ValidationError as exc:
        raise DataFormatError(_first_error(exc), path=str(path)) from exc


def save_recording(rec: Recording, path: str | Path) -> None:
    """Write a recording CSV with full-precision values."""
    frame = pd.DataFrame(rec.samples, columns=rec.column_names)
    frame.insert(0, "t", rec.times)
    write_table(frame, path)


def save_channels(channels: Sequence[ChannelMeta], path: str | Path) -> None:
    frame = pd.DataFrame(
        {
            "id": [channel.id for channel in channels],
            "wl_lo_nm": [channel.wavelength_lo_nm for channel in channels],
            "wl_hi_nm": [channel.wavelength_hi_nm for channel in channels],
            "distance_mm": [channel.source_detector_distance_mm for channel in channels],
        }
    )
    write_table(frame, path)


def load_events(path: str | Path) -> EventList:
    """
    Load an events CSV (``onset_s,label``).

    Labels must be exactly MA, MI or IS; onsets must be strictly increasing.
    """
    frame = read_table(path, expected_header=EVENTS_HEADER)
    onsets = numeric_block(frame, ["onset_s"], path)[:, 0]
    allowed = [label.value for label in CLASS_ORDER]
    events = []
    for row, (onset, label) in enumerate(zip(onsets, frame["label"]), start=1):
        if label not in allowed:
            raise DataFormatError(
                f"unknown label {label!r}; allowed labels are {', '.join(allowed)}",
                path=str(path),
                row=row,
                column="label",
            )
        if onset < 0:
            raise DataFormatError("onset must be >= 0", path=str(path), row=row, column="onset_s")
        if events and not onset > events[-1].onset_s:
            raise DataFormatError(
                f"onsets must be strictly increasing ({onset} s after {events[-1].onset_s} s)",
                path=str(path),
                row=row,
                column="onset_s",
            )
        events.append(Event(onset_s=float(onset), label=TaskLabel(label)))
    return EventList(events=tuple(events))


def save_events(ev: EventList, path: str | Path) -> None:
    frame = pd.DataFrame(
        {"onset_s": ev.onsets, "label": [label.value for label in ev.labels]},
        columns=list(EVENTS_HEADER),
    )
    write_table(frame, path)


def _first_error(exc: ValidationError) -> str:
    errors = exc.errors()
    return str(errors[0].get("msg", exc)) if errors else str(exc)


__all__ = [
    "infer_fs",
    "load_channels",
    "resolve_channels",
    "load_recording",
    "save_recording",
    "save_channels",
    "load_events",
    "save_events",
]
