"""Repeated stratified k-fold cross-validation."""

import itertools
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict
from sklearn.model_selection import LeaveOneOut, StratifiedKFold

from ..domain import CLASS_ORDER, InvalidInputError, RandomStream, derive_seed
from ..observability import get_logger
from .base import FitFn

logger = get_logger(__name__)


class CrossvalResult(BaseModel):
    """Fold accuracies in (repeat, fold) order; ``std`` is the population deviation."""

    model_config = ConfigDict(frozen=True)

    mean: float
    std: float
    fold_accuracies: tuple[float, ...]
    k: int
    repeats: int


def _summarize(accuracies: list[float], k: int, repeats: int) -> CrossvalResult:
    values = np.asarray(accuracies)
    return CrossvalResult(
        mean=float(values.mean()),
        std=float(values.std()),
        fold_accuracies=tuple(accuracies),
        k=k,
        repeats=repeats,
    )


def crossval_repeat(
    fit: FitFn, X: np.ndarray, y: np.ndarray, k: int, seed: int, repeat: int = 0
) -> list[float]:
    """
    Fold accuracies of one shuffled stratified k-fold pass.

    The shuffle of repeat ``r`` is seeded with ``derive_seed(seed, CROSSVAL, r)``.
    ``k == n`` runs leave-one-out.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    n = len(y)
    if k < 2 or k > n:
        raise InvalidInputError(f"k must lie in [2, {n}], got {k}")
    if k == n:
        splitter = LeaveOneOut()
    else:
        smallest = min(int(np.sum(y == c)) for c in np.unique(y))
        if smallest < k:
            raise InvalidInputError(
                f"a class has only {smallest} trials, fewer than the {k} folds"
            )
        splitter = StratifiedKFold(
            n_splits=k,
            shuffle=True,
            random_state=derive_seed(seed, RandomStream.CROSSVAL, repeat) % 2**32,
        )
    accuracies = []
    for train_rows, test_rows in splitter.split(X, y):
        model = fit(X[train_rows], y[train_rows])
        accuracies.append(float(np.mean(model.predict(X[test_rows]) == y[test_rows])))
    return accuracies


def crossval(
    fit: FitFn,
    X: np.ndarray,
    y: np.ndarray,
    k: int = 10,
    repeats: int = 10,
    seed: int = 0,
) -> CrossvalResult:
    """
    Repeated stratified k-fold accuracy.

    Args:
        fit: ``(X_train, y_train) -> model`` with ``predict``
        X: [n_trials x n_features]
        y: Class indices
        k: Folds per repeat
        repeats: Independent shuffles
        seed: Base seed

    Returns:
        CrossvalResult over all ``k * repeats`` folds
    """
    if repeats < 1:
        raise InvalidInputError(f"repeats must be >= 1, got {repeats}")
    accuracies: list[float] = []
    for repeat in range(repeats):
        accuracies.extend(crossval_repeat(fit, X, y, k, seed, repeat))
    result = _summarize(accuracies, k, repeats)
    logger.info(
        "cross-validation finished",
        extra={
            "extra_fields": {"k": k, "repeats": repeats, "mean": result.mean, "std": result.std}
        },
    )
    return result


def class_pairs() -> list[tuple[int, int]]:
    return list(itertools.combinations(range(len(CLASS_ORDER)), 2))


def pair_name(pair: tuple[int, int]) -> str:
    return f"{CLASS_ORDER[pair[0]]}-vs-{CLASS_ORDER[pair[1]]}"


def pairwise_crossval(
    fit: FitFn,
    X: np.ndarray,
    y: np.ndarray,
    k: int = 10,
    repeats: int = 10,
    seed: int = 0,
    pairs: Optional[list[tuple[int, int]]] = None,
) -> dict[str, CrossvalResult]:
    """Cross-validate each binary problem (MA-vs-MI, MA-vs-IS, MI-vs-IS) on its own trials."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    results = {}
    for pair in pairs or class_pairs():
        rows = np.isin(y, pair)
        results[pair_name(pair)] = crossval(fit, X[rows], y[rows], k, repeats, seed)
    return results
