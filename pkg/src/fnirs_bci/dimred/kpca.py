"""
Kernel principal component analysis (RBF or linear kernel).
"""

from fnirs_bci._compat import StrEnum
from typing import Optional

import numpy as np
from pydantic import Field
from scipy import linalg
from scipy.spatial.distance import cdist

from ..domain import FloatArray, InvalidInputError, ValueObject
from ..observability import get_logger

logger = get_logger(__name__)

# Eigenvalues above this count as positive; below -NEGATIVE_FLOOR the kernel is not PSD.
POSITIVE_FLOOR = 1e-12
NEGATIVE_FLOOR = 1e-10


class Kernel(StrEnum):
    RBF = "rbf"
    LINEAR = "linear"


def default_gamma(X: np.ndarray) -> float:
    """1 / (n_features * mean per-feature variance)."""
    X = np.asarray(X, dtype=np.float64)
    spread = float(X.var(axis=0).mean())
    if spread <= 0.0:
        raise InvalidInputError("cannot pick an RBF bandwidth for zero-variance data")
    return 1.0 / (X.shape[1] * spread)


def kernel_matrix(
    X: np.ndarray, Y: np.ndarray, kernel: Kernel, gamma: Optional[float]
) -> np.ndarray:
    if kernel is Kernel.LINEAR:
        return X @ Y.T
    return np.exp(-gamma * cdist(X, Y, metric="sqeuclidean"))


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    # Largest-magnitude entry of every column positive.
    pivots = vectors[np.argmax(np.abs(vectors), axis=0), np.arange(vectors.shape[1])]
    return vectors * np.where(pivots < 0, -1.0, 1.0)


class KpcaModel(ValueObject):
    """
    Fitted kernel PCA.

    ``alphas`` columns satisfy ``eigenvalues[i] * alphas[:, i] @ alphas[:, i] == 1``;
    ``train_column_means`` and ``train_mean`` center cross-kernels of new rows.
    """

    kernel: Kernel
    gamma: Optional[float] = None
    x_train: FloatArray
    alphas: FloatArray
    eigenvalues: FloatArray
    train_column_means: FloatArray
    train_mean: float
    n_components: int = Field(ge=0)

    @property
    def n_features(self) -> int:
        return int(self.x_train.shape[1])


def kpca_fit(
    X: np.ndarray,
    kernel: Kernel | str = Kernel.RBF,
    n_components: int = 20,
    gamma: Optional[float] = None,
) -> KpcaModel:
    """
    Fit kernel PCA on the rows of ``X``.

    The kernel matrix is double-centered, eigendecomposed, and the top
    components with eigenvalue > 1e-12 are kept. Asking for more components
    than the positive spectrum holds logs a warning and truncates.

    Args:
        X: [n_rows x n_features]
        kernel: ``rbf`` or ``linear``
        n_components: Components to keep (<= n_rows - 1)
        gamma: RBF bandwidth; ``default_gamma(X)`` when omitted

    Returns:
        KpcaModel
    """
    X = np.asarray(X, dtype=np.float64)
    kernel = Kernel(kernel)
    if X.ndim != 2 or not np.all(np.isfinite(X)):
        raise InvalidInputError("KPCA expects a finite 2-D matrix")
    n = X.shape[0]
    if n_components < 1 or n_components > n - 1:
        raise InvalidInputError(f"n_components must lie in [1, {n - 1}], got {n_components}")
    if kernel is Kernel.RBF and gamma is None:
        gamma = default_gamma(X)

    K = kernel_matrix(X, X, kernel, gamma)
    column_means = K.mean(axis=0)
    total_mean = float(K.mean())
    centered = K - column_means[None, :] - column_means[:, None] + total_mean
    centered = 0.5 * (centered + centered.T)

    eigenvalues, vectors = linalg.eigh(centered)
    eigenvalues, vectors = eigenvalues[::-1], vectors[:, ::-1]
    if eigenvalues[-1] < -NEGATIVE_FLOOR * max(1.0, abs(eigenvalues[0])):
        logger.warning(f"centered kernel has a negative eigenvalue {eigenvalues[-1]:.3g}")

    positive = int(np.sum(eigenvalues > POSITIVE_FLOOR))
    keep = min(n_components, positive)
    if keep < n_components:
        logger.warning(
            f"requested {n_components} components but only {positive} eigenvalues are positive; "
            f"keeping {keep}",
            extra={"extra_fields": {"requested": n_components, "kept": keep}},
        )
    eigenvalues = eigenvalues[:keep]
    vectors = _fix_signs(vectors[:, :keep])
    alphas = vectors / np.sqrt(eigenvalues)[None, :]

    return KpcaModel(
        kernel=kernel,
        gamma=gamma,
        x_train=X,
        alphas=alphas,
        eigenvalues=eigenvalues,
        train_column_means=column_means,
        train_mean=total_mean,
        n_components=keep,
    )


def kpca_transform(m: KpcaModel, X_new: np.ndarray) -> np.ndarray:
    """
    Project rows onto the fitted components.

    The cross-kernel is centered with the training statistics, so
    ``kpca_transform(m, X_train)`` reproduces the training scores.
    """
    X_new = np.atleast_2d(np.asarray(X_new, dtype=np.float64))
    if X_new.shape[1] != m.n_features:
        raise InvalidInputError(
            f"KPCA model expects {m.n_features} features, got {X_new.shape[1]}"
        )
    K = kernel_matrix(X_new, m.x_train, m.kernel, m.gamma)
    centered = K - K.mean(axis=1, keepdims=True) - m.train_column_means[None, :] + m.train_mean
    return centered @ m.alphas


def kpca_fit_transform(
    X: np.ndarray,
    kernel: Kernel | str = Kernel.RBF,
    n_components: int = 20,
    gamma: Optional[float] = None,
) -> tuple[KpcaModel, np.ndarray]:
    model = kpca_fit(X, kernel, n_components, gamma)
    return model, kpca_transform(model, X)
