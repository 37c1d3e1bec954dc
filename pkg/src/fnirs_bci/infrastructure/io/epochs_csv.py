"""
Epochs CSV: one row per (trial, stream).

The first line carries the metadata needed to rebuild the EpochSet,
including the stream list so a file with zero trials still round-trips::

    # fnirs-epochs format_version=1 fs=13.3 window_start_s=-5 window_end_s=25 streams=ch01_HbO;...
    trial,label,stream,s0,s1,...
"""

from pathlib import Path

import numpy as np
import pandas as pd
from pydantic import ValidationError

from ...domain import DataFormatError, EpochSet, TaskLabel, epoch_offsets
from .csv_codec import format_float, numeric_block, read_table, write_table

EPOCHS_MAGIC = "fnirs-epochs"
EPOCHS_FORMAT_VERSION = 1


def _metadata_line(es: EpochSet) -> str:
    return (
        f"# {EPOCHS_MAGIC} format_version={EPOCHS_FORMAT_VERSION} fs={format_float(es.fs)} "
        f"window_start_s={format_float(es.epoch_window_s[0])} "
        f"window_end_s={format_float(es.epoch_window_s[1])} "
        f"streams={';'.join(es.stream_names)}"
    )


def _parse_metadata(line: str, path: Path) -> dict[str, str]:
    tokens = line.strip().split()
    if len(tokens) < 2 or tokens[0] != "#" or tokens[1] != EPOCHS_MAGIC:
        raise DataFormatError(f"missing '# {EPOCHS_MAGIC}' metadata line", path=str(path), row=0)
    meta = {}
    for token in tokens[2:]:
        key, sep, value = token.partition("=")
        if not sep:
            raise DataFormatError(f"malformed metadata token {token!r}", path=str(path), row=0)
        meta[key] = value
    version = meta.get("format_version")
    if version != str(EPOCHS_FORMAT_VERSION):
        raise DataFormatError(
            f"format-version mismatch: file has {version}, supported {EPOCHS_FORMAT_VERSION}",
            path=str(path),
            row=0,
        )
    for key in ("fs", "window_start_s", "window_end_s", "streams"):
        if key not in meta:
            raise DataFormatError(f"metadata lacks {key}", path=str(path), row=0)
    return meta


def save_epochs(es: EpochSet, path: str | Path) -> None:
    """Write an EpochSet with 17-significant-digit values."""
    n_trials, n_streams, n_samples = es.data.shape
    values = es.data.reshape(n_trials * n_streams, n_samples)
    frame = pd.DataFrame(values, columns=[f"s{j}" for j in range(n_samples)])
    frame.insert(0, "stream", list(es.stream_names) * n_trials)
    frame.insert(0, "label", [label.value for label in es.labels for _ in range(n_streams)])
    frame.insert(0, "trial", np.repeat(np.arange(1, n_trials + 1), n_streams))
    write_table(frame, path, preamble=_metadata_line(es))


def load_epochs(path: str | Path) -> EpochSet:
    """
    Read an epochs file written by ``save_epochs``.

    Every trial must list each stream once, in the metadata order, and all
    rows must hold the window's sample count.
    """
    path = Path(path)
    if not path.is_file():
        raise DataFormatError("file not found", path=str(path))
    with open(path, encoding="utf-8") as handle:
        meta = _parse_metadata(handle.readline(), path)

    try:
        fs = float(meta["fs"])
        window = (float(meta["window_start_s"]), float(meta["window_end_s"]))
    except ValueError as exc:
        raise DataFormatError(f"non-numeric metadata ({exc})", path=str(path), row=0) from exc
    streams = tuple(name for name in meta["streams"].split(";") if name)
    first, last = epoch_offsets(window, fs)
    n_samples = last - first + 1

    frame = read_table(path, skiprows=1)
    header = list(frame.columns)
    expected = ["trial", "label", "stream", *[f"s{j}" for j in range(n_samples)]]
    if header != expected:
        raise DataFormatError(
            f"structural error: header has {len(header) - 3} sample columns, the window "
            f"implies {n_samples}",
            path=str(path),
            row=0,
        )

    n_streams = len(streams)
    if n_streams == 0:
        raise DataFormatError("metadata lists no streams", path=str(path), row=0)
    if len(frame) % n_streams:
        raise DataFormatError(
            f"structural error: {len(frame)} rows is not a multiple of {n_streams} streams",
            path=str(path),
        )
    n_trials = len(frame) // n_streams

    values = numeric_block(frame, expected[3:], path)
    trial_column = numeric_block(frame, ["trial"], path)[:, 0]
    labels = []
    for trial in range(n_trials):
        rows = slice(trial * n_streams, (trial + 1) * n_streams)
        block_streams = tuple(frame["stream"].iloc[rows])
        block_labels = set(frame["label"].iloc[rows])
        block_trials = set(trial_column[rows])
        row = trial * n_streams + 1
        if block_streams != streams:
            raise DataFormatError(
                f"structural error: trial {trial + 1} streams do not match the metadata order",
                path=str(path),
                row=row,
                column="stream",
            )
        if block_trials != {float(trial + 1)}:
            raise DataFormatError(
                f"structural error: expected trial {trial + 1}",
                path=str(path),
                row=row,
                column="trial",
            )
        if len(block_labels) != 1:
            raise DataFormatError(
                "structural error: label changes within a trial",
                path=str(path),
                row=row,
                column="label",
            )
        label = block_labels.pop()
        try:
            labels.append(TaskLabel(label))
        except ValueError as exc:
            raise DataFormatError(
                f"unknown label {label!r}", path=str(path), row=row, column="label"
            ) from exc

    try:
        return EpochSet(
            fs=fs,
            labels=tuple(labels),
            data=values.reshape(n_trials, n_streams, n_samples),
            stream_names=streams,
            epoch_window_s=window,
        )
    except ValidationError as exc:
        message = exc.errors()[0]["msg"]
        raise DataFormatError(f"structural error: {message}", path=str(path)) from exc
