"""Stratified train / validation / test splits."""

import math
from typing import Any, NamedTuple, Sequence

import numpy as np

from ..domain import CLASS_ORDER, InvalidInputError, RandomStream, labels_to_indices, make_rng

MIN_PER_CLASS = 3


def round_half_up(value: float) -> int:
    return int(math.floor(value + 0.5 + 1e-9))


def allocate(total: int, sizes: Sequence[int]) -> list[int]:
    """
    Split ``total`` across groups proportionally to ``sizes`` by largest remainder.

    Remainder ties go to the earlier group; no group receives more than its size.
    """
    pool = sum(sizes)
    if pool == 0:
        return [0] * len(sizes)
    ideal = [total * size / pool for size in sizes]
    counts = [min(math.floor(value + 1e-9), size) for value, size in zip(ideal, sizes)]
    remainders = [value - count for value, count in zip(ideal, counts)]
    order = sorted(range(len(sizes)), key=lambda i: (-remainders[i], i))
    missing = total - sum(counts)
    while missing > 0:
        progressed = False
        for i in order:
            if missing == 0:
                break
            if counts[i] < sizes[i]:
                counts[i] += 1
                missing -= 1
                progressed = True
        if not progressed:
            break
    return counts


class Split(NamedTuple):
    train: np.ndarray
    val: np.ndarray
    test: np.ndarray

    def sizes(self) -> dict[str, int]:
        return {"train": len(self.train), "val": len(self.val), "test": len(self.test)}


def split_train_val_test(
    labels: Sequence[Any], ratios: tuple[float, float] = (0.7, 0.7), seed: int = 0
) -> Split:
    """
    Stratified two-level split.

    The outer ratio keeps ``round_half_up(n * ratios[0])`` trials for training
    and the rest for test; the inner ratio then splits the kept trials into
    train and validation. Pooled target counts are spread across classes by
    largest remainder (ties in MA, MI, IS order), so 90 balanced trials give
    44 / 19 / 27.

    Args:
        labels: Task label (or class index) per trial
        ratios: (outer train fraction, inner train fraction)
        seed: Shuffle seed

    Returns:
        Split of sorted, disjoint index arrays covering every trial
    """
    indices = (
        np.asarray(labels, dtype=np.int64)
        if len(labels) and isinstance(labels[0], (int, np.integer))
        else labels_to_indices(labels)
    )
    n = len(indices)
    members = [np.flatnonzero(indices == k) for k in range(len(CLASS_ORDER))]
    for label, group in zip(CLASS_ORDER, members):
        if len(group) < MIN_PER_CLASS:
            raise InvalidInputError(
                f"class {label} has {len(group)} trials; "
                f"at least {MIN_PER_CLASS} are needed to split"
            )
    outer, inner = ratios
    if not (0.0 < outer <= 1.0 and 0.0 < inner <= 1.0):
        raise InvalidInputError(f"split ratios must lie in (0, 1], got {ratios}")

    kept = round_half_up(n * outer)
    n_train = round_half_up(kept * inner)
    if kept >= n or n_train >= kept or n_train == 0:
        raise InvalidInputError(
            f"ratios {ratios} leave an empty train, validation or test set for {n} trials"
        )

    sizes = [len(group) for group in members]
    test_counts = allocate(n - kept, sizes)
    remaining = [size - count for size, count in zip(sizes, test_counts)]
    train_counts = allocate(n_train, remaining)

    rng = make_rng(seed, RandomStream.SPLIT)
    train, val, test = [], [], []
    for group, n_test, n_tr in zip(members, test_counts, train_counts):
        shuffled = rng.permutation(group)
        test.append(shuffled[:n_test])
        train.append(shuffled[n_test : n_test + n_tr])
        val.append(shuffled[n_test + n_tr :])
    return Split(
        train=np.sort(np.concatenate(train)),
        val=np.sort(np.concatenate(val)),
        test=np.sort(np.concatenate(test)),
    )
