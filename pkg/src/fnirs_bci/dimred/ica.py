"""
Whitening and symmetric FastICA.

The unmixing matrix lives in whitened space; the full transform is
``(X - mean) @ whitening.T @ unmixing.T``.
"""

import warnings

import numpy as np
from pydantic import Field
from scipy import linalg

from ..domain import (
    ConvergenceWarning,
    EpochSet,
    FloatArray,
    InvalidInputError,
    RandomStream,
    ValueObject,
    make_rng,
)
from ..observability import get_logger, trace_operation

logger = get_logger(__name__)

EIGENVALUE_FLOOR = 1e-12


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    pivots = vectors[np.argmax(np.abs(vectors), axis=0), np.arange(vectors.shape[1])]
    return vectors * np.where(pivots < 0, -1.0, 1.0)


def whiten(
    X: np.ndarray, n_components: int | None = None
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Decorrelate and scale the columns of ``X`` to unit variance.

    Directions whose covariance eigenvalue is at or below 1e-12 times the
    largest one are dropped.

    Args:
        X: [n_rows x n_features], n_rows >= 2
        n_components: Keep only the leading directions

    Returns:
        (X_white, W_white, mean) with ``X_white = (X - mean) @ W_white.T``
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] < 2:
        raise InvalidInputError("whitening needs a 2-D matrix with at least 2 rows")
    mean = X.mean(axis=0)
    centered = X - mean
    covariance = np.cov(centered, rowvar=False).reshape(X.shape[1], X.shape[1])
    eigenvalues, vectors = linalg.eigh(covariance)
    eigenvalues, vectors = eigenvalues[::-1], _fix_signs(vectors[:, ::-1])

    if not np.any(centered) or eigenvalues[0] <= 0.0:
        raise InvalidInputError("cannot whiten zero-variance data")
    retained = int(np.sum(eigenvalues > EIGENVALUE_FLOOR * eigenvalues[0]))
    keep = retained if n_components is None else n_components
    if keep > retained:
        raise InvalidInputError(
            f"{keep} components requested but the data has {retained} non-degenerate directions"
        )
    W_white = vectors[:, :keep].T / np.sqrt(eigenvalues[:keep])[:, None]
    return centered @ W_white.T, W_white, mean


def symmetric_decorrelation(W: np.ndarray) -> np.ndarray:
    """W <- (W W^T)^(-1/2) W."""
    eigenvalues, vectors = linalg.eigh(W @ W.T)
    return (vectors / np.sqrt(eigenvalues)[None, :]) @ vectors.T @ W


class IcaModel(ValueObject):
    """Fitted ICA: centering mean, whitening matrix and whitened-space unmixing."""

    mean: FloatArray
    whitening: FloatArray
    unmixing: FloatArray
    n_components: int = Field(ge=1)
    converged: bool = True
    n_iter: int = 0

    @property
    def components(self) -> np.ndarray:
        """Unmixing from centered input space, [n_components x n_features]."""
        return self.unmixing @ self.whitening

    @property
    def n_features(self) -> int:
        return int(self.mean.shape[0])


@trace_operation("dimred.ica_fit", {"dimred.method": "fastica"})
def ica_fit(
    X: np.ndarray,
    n_components: int = 20,
    tol: float = 1e-6,
    max_iter: int = 500,
    seed: int = 0,
) -> IcaModel:
    """
    Symmetric FastICA with the log-cosh contrast (g = tanh).

    Iterates ``W <- E[g(WZ) Z^T] - diag(E[g'(WZ)]) W`` followed by
    symmetric decorrelation until ``max |1 - |diag(W_new W_old^T)|| < tol``.
    Hitting ``max_iter`` issues a ``ConvergenceWarning`` and returns the last
    iterate with ``converged=False``.

    Args:
        X: [n_rows x n_features]
        n_components: Independent components (<= min(n_rows - 1, n_features))
        tol: Convergence tolerance
        max_iter: Iteration limit
        seed: Seed of the random initial unmixing matrix

    Returns:
        IcaModel
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise InvalidInputError("ICA expects a 2-D matrix")
    if n_components < 1 or n_components > min(X.shape[0] - 1, X.shape[1]):
        raise InvalidInputError(
            f"n_components must lie in [1, {min(X.shape[0] - 1, X.shape[1])}], got {n_components}"
        )

    Z, W_white, mean = whiten(X, n_components)
    n_rows = Z.shape[0]
    rng = make_rng(seed, RandomStream.ICA)
    W = symmetric_decorrelation(rng.standard_normal((n_components, n_components)))

    converged = False
    iteration = 0
    for iteration in range(1, max_iter + 1):
        projected = np.tanh(Z @ W.T)
        derivative = 1.0 - projected**2
        W_new = symmetric_decorrelation(
            projected.T @ Z / n_rows - derivative.mean(axis=0)[:, None] * W
        )
        change = float(np.max(np.abs(1.0 - np.abs(np.einsum("ij,ij->i", W_new, W)))))
        W = W_new
        if change < tol:
            converged = True
            break

    if not converged:
        warnings.warn(
            f"FastICA did not converge in {max_iter} iterations (tol={tol})",
            ConvergenceWarning,
            stacklevel=2,
        )
        logger.warning(
            "FastICA hit its iteration limit",
            extra={"extra_fields": {"max_iter": max_iter, "tol": tol}},
        )

    return IcaModel(
        mean=mean,
        whitening=W_white,
        unmixing=W,
        n_components=n_components,
        converged=converged,
        n_iter=iteration,
    )


def ica_transform(m: IcaModel, X_new: np.ndarray) -> np.ndarray:
    """(X_new - mean) @ W_white^T @ W^T."""
    X_new = np.atleast_2d(np.asarray(X_new, dtype=np.float64))
    if X_new.shape[1] != m.n_features:
        raise InvalidInputError(f"ICA model expects {m.n_features} features, got {X_new.shape[1]}")
    return (X_new - m.mean) @ m.components.T


def amari_index(P: np.ndarray) -> float:
    """
    Distance of a square matrix from a scaled permutation, in [0, 1].

    0 means ``P`` has exactly one non-zero entry per row and column.
    """
    P = np.abs(np.asarray(P, dtype=np.float64))
    k = P.shape[0]
    if k < 2:
        return 0.0
    rows = (P / P.max(axis=1, keepdims=True)).sum(axis=1) - 1.0
    cols = (P / P.max(axis=0, keepdims=True)).sum(axis=0) - 1.0
    return float((rows.sum() + cols.sum()) / (2.0 * k * (k - 1)))


def epoch_time_steps(es: EpochSet) -> np.ndarray:
    """Stack every trial's time steps: [n_trials * n_samples x n_streams]."""
    return es.data.transpose(0, 2, 1).reshape(-1, es.n_streams)


def component_names(n_components: int) -> tuple[str, ...]:
    return tuple(f"ic{index:02d}" for index in range(1, n_components + 1))


def ica_fit_epochs(
    es: EpochSet, n_components: int = 20, tol: float = 1e-6, max_iter: int = 500, seed: int = 0
) -> IcaModel:
    """Fit ICA on the time steps of the given (training) trials."""
    return ica_fit(epoch_time_steps(es), n_components, tol, max_iter, seed)


def ica_reduce_epochs(m: IcaModel, es: EpochSet) -> EpochSet:
    """Map every time step to component space; trials, labels and timing are unchanged."""
    reduced = ica_transform(m, epoch_time_steps(es))
    data = reduced.reshape(es.n_trials, es.n_samples, m.n_components).transpose(0, 2, 1)
    return es.with_data(data, component_names(m.n_components))
