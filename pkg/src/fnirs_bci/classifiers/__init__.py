"""Baseline classifiers and cross-validation."""

from .ann import AnnConfig, AnnModel, ann_baseline_fit
from .base import (
    Classifier,
    FitFn,
    LinearKind,
    LinearModel,
    ScaledClassifier,
    Standardizer,
    with_standard_scaling,
)
from .crossval import CrossvalResult, crossval, crossval_repeat, pair_name, pairwise_crossval
from .logreg import logreg_fit
from .slda import SldaModel, slda_fit, slda_predict
from .svm import svm_ovr_fit

__all__ = [
    "Classifier",
    "FitFn",
    "LinearKind",
    "LinearModel",
    "ScaledClassifier",
    "Standardizer",
    "with_standard_scaling",
    "logreg_fit",
    "svm_ovr_fit",
    "SldaModel",
    "slda_fit",
    "slda_predict",
    "AnnConfig",
    "AnnModel",
    "ann_baseline_fit",
    "CrossvalResult",
    "crossval",
    "crossval_repeat",
    "pairwise_crossval",
    "pair_name",
]
