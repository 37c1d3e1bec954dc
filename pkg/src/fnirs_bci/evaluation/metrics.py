"""Confusion matrices, accuracy, one-vs-rest ROC curves and the evaluation report."""

from typing import Any, Optional, Sequence

import numpy as np

from ..domain import (
    CLASS_ORDER,
    ConfusionMatrix,
    EvalReport,
    InvalidInputError,
    RocCurve,
    TaskLabel,
    label_index,
    labels_to_indices,
)


def as_class_indices(labels: Sequence[Any]) -> np.ndarray:
    """Task labels or integer class indices to an int64 index array."""
    values = np.asarray(labels)
    if values.size == 0:
        return np.zeros(0, dtype=np.int64)
    if np.issubdtype(values.dtype, np.integer):
        if np.any((values < 0) | (values >= len(CLASS_ORDER))):
            raise InvalidInputError(f"class index outside 0..{len(CLASS_ORDER) - 1}")
        return values.astype(np.int64)
    try:
        return labels_to_indices(labels)
    except ValueError as exc:
        raise InvalidInputError(f"unknown label: {exc}") from exc


def confusion(y_true: Sequence[Any], y_pred: Sequence[Any]) -> ConfusionMatrix:
    """Counts by (actual, predicted), rows and columns in MA, MI, IS order."""
    actual, predicted = as_class_indices(y_true), as_class_indices(y_pred)
    if actual.shape != predicted.shape:
        raise InvalidInputError(
            f"y_true and y_pred differ in length ({len(actual)} vs {len(predicted)})"
        )
    size = len(CLASS_ORDER)
    counts = np.zeros((size, size), dtype=np.int64)
    np.add.at(counts, (actual, predicted), 1)
    return ConfusionMatrix(counts=counts)


def accuracy(cm: ConfusionMatrix) -> float:
    """Trace over total."""
    if cm.total == 0:
        raise InvalidInputError("accuracy of an empty confusion matrix")
    return cm.correct / cm.total


def roc_ovr(scores: np.ndarray, labels: Sequence[Any], positive_class: TaskLabel | str) -> RocCurve:
    """
    One-vs-rest ROC curve with grouped ties.

    Thresholds run over the distinct scores in descending order, preceded by
    +inf (the (0, 0) point). The trapezoidal area is computed from integer
    counts and equals the Mann-Whitney pair statistic with ties counted 1/2.

    Args:
        scores: [n] positive-class scores, or [n x 3] probability rows
        labels: True label per trial
        positive_class: Class treated as positive

    Returns:
        RocCurve
    """
    positive = TaskLabel(positive_class)
    scores = np.asarray(scores, dtype=np.float64)
    if scores.ndim == 2:
        scores = scores[:, label_index(positive)]
    is_positive = (as_class_indices(labels) == label_index(positive)).astype(np.int64)
    if scores.shape != is_positive.shape:
        raise InvalidInputError("scores and labels differ in length")
    n_pos = int(is_positive.sum())
    n_neg = len(is_positive) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise InvalidInputError(
            f"ROC for {positive} needs both positive and negative trials"
        )

    order = np.argsort(-scores, kind="stable")
    sorted_scores = scores[order]
    hits = is_positive[order]
    ends = np.r_[np.flatnonzero(np.diff(sorted_scores) != 0.0), len(sorted_scores) - 1]
    tps = np.r_[0, np.cumsum(hits)[ends]]
    fps = np.r_[0, np.cumsum(1 - hits)[ends]]
    doubled_area = int(np.sum(np.diff(fps) * (tps[1:] + tps[:-1])))
    return RocCurve(
        positive_class=positive,
        fpr=fps / n_neg,
        tpr=tps / n_pos,
        thresholds=np.r_[np.inf, sorted_scores[ends]],
        auc=doubled_area / (2 * n_pos * n_neg),
    )


def eval_report(
    probs: np.ndarray,
    labels: Sequence[Any],
    seed: int = 0,
    split_sizes: Optional[dict[str, int]] = None,
) -> EvalReport:
    """
    Accuracy, confusion matrix and the three one-vs-rest ROC curves.

    Args:
        probs: [n x 3] probability rows in MA, MI, IS order
        labels: True label per row
        seed: Seed recorded in the report
        split_sizes: Train / val / test sizes recorded in the report
    """
    probs = np.asarray(probs, dtype=np.float64)
    if probs.ndim != 2 or probs.shape[1] != len(CLASS_ORDER):
        raise InvalidInputError(f"expected [n x {len(CLASS_ORDER)}] probability rows")
    truth = as_class_indices(labels)
    cm = confusion(truth, np.argmax(probs, axis=1))
    return EvalReport(
        accuracy=accuracy(cm),
        confusion=cm,
        roc={label: roc_ovr(probs, truth, label) for label in CLASS_ORDER},
        n_test=len(truth),
        seed=seed,
        split_sizes=dict(split_sizes or {}),
    )
