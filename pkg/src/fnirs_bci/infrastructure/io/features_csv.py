"""FeatureMatrix CSV: ``trial,label,<feature names...>``."""

from pathlib import Path

import numpy as np
import pandas as pd
from pydantic import ValidationError

from ...domain import DataFormatError, FeatureMatrix, TaskLabel
from .csv_codec import numeric_block, read_table, write_table


def save_features(fm: FeatureMatrix, path: str | Path) -> None:
    frame = pd.DataFrame(fm.values, columns=list(fm.feature_names))
    frame.insert(0, "label", [label.value for label in fm.labels])
    frame.insert(0, "trial", np.arange(1, fm.n_trials + 1))
    write_table(frame, path)


def load_features(path: str | Path) -> FeatureMatrix:
    frame = read_table(path)
    header = [str(name) for name in frame.columns]
    if header[:2] != ["trial", "label"]:
        raise DataFormatError(
            "malformed header: expected 'trial,label,<features...>'", path=str(path), row=0
        )
    labels = []
    for row, label in enumerate(frame["label"], start=1):
        try:
            labels.append(TaskLabel(label))
        except ValueError as exc:
            raise DataFormatError(
                f"unknown label {label!r}", path=str(path), row=row, column="label"
            ) from exc
    try:
        return FeatureMatrix(
            values=numeric_block(frame, header[2:], path).reshape(len(frame), len(header) - 2),
            feature_names=tuple(header[2:]),
            labels=tuple(labels),
        )
    except ValidationError as exc:
        raise DataFormatError(exc.errors()[0]["msg"], path=str(path)) from exc
