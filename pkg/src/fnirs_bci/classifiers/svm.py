"""Linear one-vs-rest SVM trained by averaged stochastic subgradient descent."""

import numpy as np

from ..domain import InvalidInputError, RandomStream, make_rng
from .base import LinearKind, LinearModel, check_training_set


def _binary_pegasos(
    X: np.ndarray, signs: np.ndarray, lam: float, epochs: int, rng: np.random.Generator
) -> tuple[np.ndarray, float]:
    """Minimize ``lam/2 ||w||^2 + mean hinge`` with step 1/(lam*t); returns the averaged iterate."""
    n, d = X.shape
    w = np.zeros(d)
    b = 0.0
    w_sum = np.zeros(d)
    b_sum = 0.0
    t = 0
    for _ in range(epochs):
        for i in rng.permutation(n):
            t += 1
            eta = 1.0 / (lam * t)
            violated = signs[i] * (X[i] @ w + b) < 1.0
            w *= 1.0 - eta * lam
            if violated:
                w += eta * signs[i] * X[i]
                b += eta * signs[i]
            w_sum += w
            b_sum += b
    return w_sum / t, b_sum / t


def svm_ovr_fit(
    X: np.ndarray, y: np.ndarray, C: float = 1.0, epochs: int = 50, seed: int = 0
) -> LinearModel:
    """
    One hinge-loss separator per class present in ``y``.

    Each separator minimizes ``mean hinge + ||w||^2 / (2C)`` with Pegasos
    steps over ``epochs`` seeded passes; the averaged iterate is kept.
    Prediction is the class with the largest margin.

    Args:
        X: [n_trials x n_features]
        y: Class indices
        C: Inverse regularization strength (> 0)
        epochs: Passes over the data
        seed: Shuffle seed

    Returns:
        LinearModel of kind ``svm_ovr``
    """
    if C <= 0.0:
        raise InvalidInputError(f"C must be positive, got {C}")
    if epochs < 1:
        raise InvalidInputError(f"epochs must be >= 1, got {epochs}")
    X, y, classes = check_training_set(X, y)
    lam = 1.0 / C
    weights = np.zeros((X.shape[1], len(classes)))
    bias = np.zeros(len(classes))
    for column, k in enumerate(classes):
        rng = make_rng(seed, RandomStream.SVM, k)
        signs = np.where(y == k, 1.0, -1.0)
        weights[:, column], bias[column] = _binary_pegasos(X, signs, lam, epochs, rng)
    return LinearModel(weights=weights, bias=bias, kind=LinearKind.SVM_OVR, classes=classes)
