"""Splits and evaluation metrics."""

from .metrics import accuracy, as_class_indices, confusion, eval_report, roc_ovr
from .splits import Split, allocate, round_half_up, split_train_val_test

__all__ = [
    "Split",
    "allocate",
    "round_half_up",
    "split_train_val_test",
    "as_class_indices",
    "confusion",
    "accuracy",
    "roc_ovr",
    "eval_report",
]
