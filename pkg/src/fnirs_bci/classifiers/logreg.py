"""Multinomial logistic regression by gradient descent with backtracking line search."""

import warnings

import numpy as np

from ..domain import ConvergenceWarning, RandomStream, make_rng
from ..nn.activations import softmax
from ..observability import get_logger
from .base import LinearKind, LinearModel, check_training_set

logger = get_logger(__name__)

ARMIJO_C = 1e-4
SHRINK = 0.5


def _objective(
    X: np.ndarray, targets: np.ndarray, W: np.ndarray, b: np.ndarray, l2: float
) -> tuple[float, np.ndarray, np.ndarray]:
    """Mean cross-entropy plus ``l2 * ||W||^2`` and its gradients."""
    z = X @ W + b
    z = z - z.max(axis=1, keepdims=True)
    log_norm = np.log(np.exp(z).sum(axis=1, keepdims=True))
    loss = float(-np.mean(np.sum(targets * (z - log_norm), axis=1)) + l2 * np.sum(W * W))
    residual = (softmax(z) - targets) / X.shape[0]
    return loss, X.T @ residual + 2.0 * l2 * W, residual.sum(axis=0)


def logreg_fit(
    X: np.ndarray,
    y: np.ndarray,
    l2: float = 1e-3,
    max_iter: int = 1000,
    tol: float = 1e-6,
    seed: int = 0,
) -> LinearModel:
    """
    Fit softmax regression on the classes present in ``y``.

    Full-batch gradient descent; each step halves a trial step size until the
    Armijo condition holds and the next iteration starts from twice the
    accepted size. Converged once the gradient's max-norm drops below ``tol``;
    otherwise a ``ConvergenceWarning`` is issued and ``converged`` is False.

    Args:
        X: [n_trials x n_features]
        y: Class indices
        l2: Penalty on the weights (bias excluded)
        max_iter: Iteration limit
        tol: Gradient tolerance
        seed: Seed of the small random initial weights

    Returns:
        LinearModel of kind ``logreg``
    """
    X, y, classes = check_training_set(X, y)
    targets = (y[:, None] == np.asarray(classes)[None, :]).astype(np.float64)
    rng = make_rng(seed, RandomStream.LOGREG)
    W = rng.normal(0.0, 0.01, size=(X.shape[1], len(classes)))
    b = np.zeros(len(classes))

    loss, gW, gb = _objective(X, targets, W, b, l2)
    step = 1.0
    converged = False
    for _ in range(max_iter):
        grad_norm = max(float(np.max(np.abs(gW))), float(np.max(np.abs(gb))))
        if grad_norm < tol:
            converged = True
            break
        squared = float(np.sum(gW * gW) + np.sum(gb * gb))
        while True:
            W_new, b_new = W - step * gW, b - step * gb
            new_loss, new_gW, new_gb = _objective(X, targets, W_new, b_new, l2)
            if new_loss <= loss - ARMIJO_C * step * squared or step < 1e-20:
                break
            step *= SHRINK
        W, b, loss, gW, gb = W_new, b_new, new_loss, new_gW, new_gb
        step *= 2.0

    if not converged:
        warnings.warn(
            f"logistic regression did not converge in {max_iter} iterations",
            ConvergenceWarning,
            stacklevel=2,
        )
        logger.warning(
            "logistic regression hit its iteration limit",
            extra={"extra_fields": {"max_iter": max_iter, "tol": tol}},
        )
    return LinearModel(
        weights=W, bias=b, kind=LinearKind.LOGREG, classes=classes, converged=converged
    )
