"""Plot-ready and report exports: metrics JSON and CSV tables."""

import json
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np
import pandas as pd

from ...domain import CLASS_ORDER, EvalReport, RocCurve, TaskLabel
from .atomic import atomic_write_text
from .csv_codec import write_table

ROC_HEADER = ("threshold", "fpr", "tpr")
TRAIN_REPORT_HEADER = (
    "epoch",
    "train_loss",
    "train_accuracy",
    "val_loss",
    "val_accuracy",
    "lr",
)
GRID_HEADER = (
    "lr",
    "dropout",
    "units",
    "seed",
    "val_error",
    "val_loss",
    "stopped_epoch",
    "diverged",
)
COMPARISON_HEADER = ("subject", "seed", "bilstm_accuracy", "slda_accuracy", "ann_accuracy")


def metrics_json_text(report: EvalReport) -> str:
    """Keys ``accuracy``, ``confusion``, ``auc``, ``n_test``, ``seed``, ``split_sizes``."""
    return json.dumps(report.to_metrics(), indent=2, allow_nan=False) + "\n"


def write_metrics_json(report: EvalReport, path: str | Path) -> None:
    atomic_write_text(path, metrics_json_text(report))


def roc_frame(curve: RocCurve) -> pd.DataFrame:
    return pd.DataFrame(
        {"threshold": curve.thresholds, "fpr": curve.fpr, "tpr": curve.tpr},
        columns=list(ROC_HEADER),
    )


def write_roc_csv(curve: RocCurve, path: str | Path) -> None:
    write_table(roc_frame(curve), path)


def roc_filename(label: TaskLabel) -> str:
    return f"roc_{label.value}.csv"


def write_train_report(epochs: Sequence[Mapping[str, float]], path: str | Path) -> None:
    """One row per epoch: ``epoch,train_loss,train_accuracy,val_loss,val_accuracy,lr``."""
    frame = pd.DataFrame(list(epochs), columns=list(TRAIN_REPORT_HEADER))
    frame["epoch"] = frame["epoch"].astype(np.int64)
    write_table(frame, path)


def write_grid_table(rows: Sequence[Mapping[str, object]], path: str | Path) -> None:
    """Grid-search cells: ``lr,dropout,units,seed,val_error,val_loss,stopped_epoch,diverged``."""
    write_table(pd.DataFrame(list(rows), columns=list(GRID_HEADER)), path)


def write_correlation_csv(matrix: np.ndarray, names: Sequence[str], path: str | Path) -> None:
    """Square matrix with a leading ``name`` column."""
    frame = pd.DataFrame(np.asarray(matrix, dtype=np.float64), columns=list(names))
    frame.insert(0, "name", list(names))
    write_table(frame, path)


def write_class_curves(
    axis_name: str,
    axis: np.ndarray,
    curves: Mapping[TaskLabel, np.ndarray],
    path: str | Path,
) -> None:
    """``<axis_name>,MA,MI,IS``: one row per axis value."""
    frame = pd.DataFrame({axis_name: np.asarray(axis, dtype=np.float64)})
    for label in CLASS_ORDER:
        frame[label.value] = np.asarray(curves[label], dtype=np.float64)
    write_table(frame, path)


def write_timecourse_csv(
    times: np.ndarray, averages: Mapping[TaskLabel, np.ndarray], path: str | Path
) -> None:
    write_class_curves("t_s", times, averages, path)


def write_spectrum_csv(
    freqs: np.ndarray, spectra: Mapping[TaskLabel, np.ndarray], path: str | Path
) -> None:
    write_class_curves("frequency_hz", freqs, spectra, path)


def comparison_frame(rows: Sequence[Mapping[str, float]]) -> pd.DataFrame:
    """Per-subject accuracies followed by a ``mean`` row."""
    frame = pd.DataFrame(list(rows), columns=list(COMPARISON_HEADER))
    means = {"subject": "mean", "seed": ""}
    for column in COMPARISON_HEADER[2:]:
        means[column] = float(frame[column].astype(np.float64).mean()) if len(frame) else np.nan
    frame = frame.astype({"subject": str, "seed": str})
    return pd.concat([frame, pd.DataFrame([means])], ignore_index=True)


def write_comparison_csv(rows: Sequence[Mapping[str, float]], path: str | Path) -> None:
    write_table(comparison_frame(rows), path)


def write_crossval_csv(results: Mapping[str, tuple[float, float, int]], path: str | Path) -> None:
    """``problem,mean_accuracy,std_accuracy,folds``."""
    frame = pd.DataFrame(
        [(name, mean, std, folds) for name, (mean, std, folds) in results.items()],
        columns=["problem", "mean_accuracy", "std_accuracy", "folds"],
    )
    write_table(frame, path)
