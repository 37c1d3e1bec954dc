"""Shared classifier types."""

from fnirs_bci._compat import StrEnum
from typing import Callable, Protocol

import numpy as np
from pydantic import model_validator
from sklearn.preprocessing import StandardScaler

from ..domain import CLASS_ORDER, FloatArray, InvalidInputError, ValueObject
from ..nn.activations import softmax


class Classifier(Protocol):
    def predict(self, X: np.ndarray) -> np.ndarray: ...

    def predict_proba(self, X: np.ndarray) -> np.ndarray: ...


FitFn = Callable[[np.ndarray, np.ndarray], Classifier]


class LinearKind(StrEnum):
    LOGREG = "logreg"
    SVM_OVR = "svm_ovr"
    SLDA = "slda"


class LinearModel(ValueObject):
    """
    ``scores = X @ weights + bias``; column j scores class index ``classes[j]``.
    """

    weights: FloatArray
    bias: FloatArray
    kind: LinearKind
    classes: tuple[int, ...]
    converged: bool = True

    @model_validator(mode="after")
    def _check(self) -> "LinearModel":
        if self.weights.ndim != 2 or self.bias.shape != (self.weights.shape[1],):
            raise ValueError("weights must be [n_features x n_classes] with a matching bias")
        if len(self.classes) != self.weights.shape[1]:
            raise ValueError("one class index per weight column is required")
        if not (np.all(np.isfinite(self.weights)) and np.all(np.isfinite(self.bias))):
            raise ValueError("linear model parameters must be finite")
        return self

    def decision_function(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        if X.shape[1] != self.weights.shape[0]:
            raise InvalidInputError(
                f"model expects {self.weights.shape[0]} features, got {X.shape[1]}"
            )
        return X @ self.weights + self.bias

    def predict(self, X: np.ndarray) -> np.ndarray:
        columns = np.argmax(self.decision_function(X), axis=1)
        return np.asarray(self.classes, dtype=np.int64)[columns]

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        """Softmax of the scores spread onto the MA, MI, IS columns."""
        return expand_proba(softmax(self.decision_function(X)), self.classes)


def expand_proba(probs: np.ndarray, classes: tuple[int, ...]) -> np.ndarray:
    full = np.zeros((probs.shape[0], len(CLASS_ORDER)))
    full[:, list(classes)] = probs
    return full


def check_training_set(
    X: np.ndarray, y: np.ndarray
) -> tuple[np.ndarray, np.ndarray, tuple[int, ...]]:
    """Validate a feature matrix and class indices; returns the classes present."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    if X.ndim != 2 or X.shape[0] != y.shape[0]:
        raise InvalidInputError("X must be [n_trials x n_features] with one label per row")
    if not np.all(np.isfinite(X)):
        raise InvalidInputError("feature matrix contains non-finite values")
    classes = tuple(int(k) for k in np.unique(y))
    if len(classes) < 2:
        raise InvalidInputError("at least 2 classes must be present to fit a classifier")
    return X, y, classes


class Standardizer(ValueObject):
    """Per-feature training mean and population deviation; constant features keep scale 1."""

    mean: FloatArray
    scale: FloatArray

    @model_validator(mode="after")
    def _check(self) -> "Standardizer":
        if self.mean.ndim != 1 or self.scale.shape != self.mean.shape:
            raise ValueError("mean and scale must be matching vectors")
        if not np.all(self.scale > 0):
            raise ValueError("scale must be positive")
        return self

    @classmethod
    def fit(cls, X: np.ndarray) -> "Standardizer":
        scaler = StandardScaler().fit(X)
        return cls(mean=scaler.mean_, scale=scaler.scale_)

    def transform(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2 or X.shape[1] != self.mean.shape[0]:
            raise InvalidInputError(
                f"expected {self.mean.shape[0]} features, got array of shape {X.shape}"
            )
        return (X - self.mean) / self.scale


class ScaledClassifier:
    """Standardize features with the training mean and deviation before the wrapped model."""

    def __init__(self, scaler: Standardizer, model: Classifier):
        self.scaler = scaler
        self.model = model

    def predict(self, X: np.ndarray) -> np.ndarray:
        return self.model.predict(self.scaler.transform(X))

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        return self.model.predict_proba(self.scaler.transform(X))


def with_standard_scaling(fit: FitFn) -> FitFn:
    """Wrap ``fit`` so every fold is scaled with statistics of its own training rows."""

    def scaled_fit(X: np.ndarray, y: np.ndarray) -> ScaledClassifier:
        scaler = Standardizer.fit(X)
        return ScaledClassifier(scaler, fit(scaler.transform(X), y))

    return scaled_fit
