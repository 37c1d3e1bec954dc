"""Categorical cross-entropy with an L2 kernel penalty."""

from typing import Iterable

import numpy as np

PROB_FLOOR = 1e-12


def one_hot(labels: np.ndarray, n_classes: int = 3) -> np.ndarray:
    labels = np.asarray(labels, dtype=np.int64)
    encoded = np.zeros((labels.shape[0], n_classes))
    encoded[np.arange(labels.shape[0]), labels] = 1.0
    return encoded


def cross_entropy(probs: np.ndarray, labels_onehot: np.ndarray) -> float:
    """Mean of ``-log p_true`` with ``p_true`` clamped at 1e-12."""
    p_true = np.sum(probs * labels_onehot, axis=1)
    return float(np.mean(-np.log(np.maximum(p_true, PROB_FLOOR))))


def l2_penalty(kernels: Iterable[np.ndarray], l2: float) -> float:
    return float(l2 * sum(float(np.sum(W * W)) for W in kernels))


def loss_forward(
    probs: np.ndarray,
    labels_onehot: np.ndarray,
    kernels: Iterable[np.ndarray] = (),
    l2: float = 0.1,
) -> float:
    """
    Cross-entropy plus ``l2 * sum ||W||^2`` over kernel weights.

    Args:
        probs: [batch x classes] probability rows
        labels_onehot: [batch x classes]
        kernels: Regularized weight matrices (biases excluded)
        l2: Penalty strength

    Returns:
        Scalar loss
    """
    return cross_entropy(probs, labels_onehot) + l2_penalty(kernels, l2)


def softmax_cross_entropy_grad(probs: np.ndarray, labels_onehot: np.ndarray) -> np.ndarray:
    """
    Gradient of the mean cross-entropy with respect to the softmax logits.

    Rows whose true-class probability sits below the clamp have zero gradient.
    """
    grad = (probs - labels_onehot) / probs.shape[0]
    clamped = np.sum(probs * labels_onehot, axis=1) < PROB_FLOOR
    grad[clamped] = 0.0
    return grad
