"""
Shrinkage linear discriminant analysis.

The pooled within-class covariance ``S`` is shrunk toward the scaled identity,
``(1 - gamma) * S + gamma * trace(S) / d * I``. With ``gamma="auto"`` the
Ledoit-Wolf analytic estimate is used.
"""

from typing import Literal

import numpy as np
from pydantic import Field
from scipy import linalg
from sklearn.covariance import ledoit_wolf_shrinkage

from ..domain import FloatArray, InvalidInputError, ValueObject
from ..nn.activations import softmax
from ..observability import get_logger
from .base import LinearKind, LinearModel, check_training_set, expand_proba

logger = get_logger(__name__)

SINGULAR_RCOND = 1e-12


class SldaModel(ValueObject):
    means: FloatArray
    covariance: FloatArray
    shrinkage: float = Field(ge=0.0, le=1.0)
    priors: FloatArray
    classes: tuple[int, ...]

    def as_linear(self) -> LinearModel:
        """Discriminant scores ``x S^-1 mu_k - mu_k S^-1 mu_k / 2 + ln pi_k`` as a linear model."""
        solved = linalg.solve(self.covariance, self.means.T, assume_a="pos")
        bias = -0.5 * np.einsum("kd,dk->k", self.means, solved) + np.log(self.priors)
        return LinearModel(weights=solved, bias=bias, kind=LinearKind.SLDA, classes=self.classes)

    def predict(self, X: np.ndarray) -> np.ndarray:
        return slda_predict(self, X)

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        return expand_proba(softmax(slda_scores(self, X)), self.classes)


def pooled_scatter(
    X: np.ndarray, y: np.ndarray, classes: tuple[int, ...]
) -> tuple[np.ndarray, np.ndarray]:
    """Class means and the rows centered on their own class mean."""
    means = np.stack([X[y == k].mean(axis=0) for k in classes])
    centered = X - means[np.searchsorted(np.asarray(classes), y)]
    return means, centered


def slda_fit(
    X: np.ndarray, y: np.ndarray, gamma: float | Literal["auto"] = "auto"
) -> SldaModel:
    """
    Fit shrinkage LDA.

    Args:
        X: [n_trials x n_features]
        y: Class indices, at least 2 trials per class
        gamma: Shrinkage in [0, 1], or ``"auto"`` for Ledoit-Wolf

    Returns:
        SldaModel

    Raises:
        InvalidInputError: Too few trials per class, or a singular covariance
    """
    X, y, classes = check_training_set(X, y)
    counts = np.array([np.sum(y == k) for k in classes])
    if np.any(counts < 2):
        raise InvalidInputError("sLDA needs at least 2 trials per class")
    means, centered = pooled_scatter(X, y, classes)
    n, d = X.shape
    S = centered.T @ centered / n
    if gamma == "auto":
        shrinkage = float(ledoit_wolf_shrinkage(centered, assume_centered=True))
    else:
        shrinkage = float(gamma)
        if not 0.0 <= shrinkage <= 1.0:
            raise InvalidInputError(f"shrinkage must lie in [0, 1], got {gamma}")
    covariance = (1.0 - shrinkage) * S + shrinkage * np.trace(S) / d * np.eye(d)
    eigenvalues = linalg.eigvalsh(covariance)
    if eigenvalues[0] <= SINGULAR_RCOND * max(eigenvalues[-1], 0.0):
        raise InvalidInputError(
            f"shrunk covariance is singular (gamma={shrinkage:.3g}, {d} features, {n} trials)"
        )
    logger.debug("sLDA fitted", extra={"extra_fields": {"shrinkage": shrinkage, "features": d}})
    return SldaModel(
        means=means, covariance=covariance, shrinkage=shrinkage, priors=counts / n, classes=classes
    )


def slda_scores(m: SldaModel, X: np.ndarray) -> np.ndarray:
    return m.as_linear().decision_function(X)


def slda_predict(m: SldaModel, X: np.ndarray) -> np.ndarray:
    """Class index with the largest discriminant score."""
    return np.asarray(m.classes, dtype=np.int64)[np.argmax(slda_scores(m, X), axis=1)]
