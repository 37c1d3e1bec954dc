"""Evaluation results: confusion matrix, ROC curves, report."""

from typing import Any

import numpy as np
from pydantic import Field, field_validator, model_validator

from ..value_objects import ValueObject, frozen_array
from .recording import CLASS_ORDER, TaskLabel


class ConfusionMatrix(ValueObject):
    """3x3 counts; rows are actual classes, columns predicted, both in MA, MI, IS order."""

    counts: np.ndarray

    @field_validator("counts", mode="before")
    @classmethod
    def _freeze_counts(cls, value: Any) -> np.ndarray:
        return frozen_array(value, dtype=np.int64)

    @model_validator(mode="after")
    def _check_counts(self) -> "ConfusionMatrix":
        size = len(CLASS_ORDER)
        if self.counts.shape != (size, size):
            raise ValueError(f"confusion matrix must be {size}x{size}")
        if np.any(self.counts < 0):
            raise ValueError("confusion counts must be non-negative")
        return self

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def correct(self) -> int:
        return int(np.trace(self.counts))

    def row(self, label: TaskLabel) -> list[int]:
        return [int(v) for v in self.counts[CLASS_ORDER.index(label)]]


class RocCurve(ValueObject):
    """One-vs-rest ROC points from (0, 0) to (1, 1)."""

    positive_class: TaskLabel
    fpr: np.ndarray
    tpr: np.ndarray
    thresholds: np.ndarray
    auc: float = Field(ge=0.0, le=1.0)

    @field_validator("fpr", "tpr", "thresholds", mode="before")
    @classmethod
    def _freeze(cls, value: Any) -> np.ndarray:
        return frozen_array(value)

    @model_validator(mode="after")
    def _check_curve(self) -> "RocCurve":
        if not (len(self.fpr) == len(self.tpr) == len(self.thresholds)):
            raise ValueError("fpr, tpr and thresholds must have equal length")
        if np.any(np.diff(self.fpr) < 0) or np.any(np.diff(self.tpr) < 0):
            raise ValueError("ROC coordinates must be non-decreasing")
        return self


class EvalReport(ValueObject):
    """Accuracy, confusion matrix and one ROC curve per class."""

    accuracy: float
    confusion: ConfusionMatrix
    roc: dict[TaskLabel, RocCurve]
    n_test: int
    seed: int
    split_sizes: dict[str, int] = Field(default_factory=dict)

    @property
    def auc(self) -> dict[str, float]:
        return {label.value: self.roc[label].auc for label in CLASS_ORDER if label in self.roc}

    def to_metrics(self) -> dict[str, Any]:
        """The metrics JSON document."""
        return {
            "accuracy": self.accuracy,
            "confusion": [[int(v) for v in row] for row in self.confusion.counts],
            "auc": self.auc,
            "n_test": self.n_test,
            "seed": self.seed,
            "split_sizes": dict(self.split_sizes),
        }
