"""Tests for stratified splits."""

import numpy as np
import pytest

from fnirs_bci.domain import CLASS_ORDER, InvalidInputError
from fnirs_bci.evaluation import allocate, round_half_up, split_train_val_test


def _balanced(n_per_class):
    return [label for label in CLASS_ORDER for _ in range(n_per_class)]


class TestAllocate:
    """Tests for largest-remainder allocation."""

    def test_remainder_ties_go_first(self):
        """Test that equal remainders favour earlier groups."""
        assert allocate(44, [21, 21, 21]) == [15, 15, 14]

    def test_exact(self):
        """Test proportional shares without remainders."""
        assert allocate(27, [30, 30, 30]) == [9, 9, 9]

    def test_capped_by_size(self):
        """Test that no group exceeds its size."""
        assert allocate(3, [1, 1]) == [1, 1]

    def test_round_half_up(self):
        """Test rounding of exact halves."""
        assert [round_half_up(v) for v in (0.5, 1.5, 2.49, 62.5)] == [1, 2, 2, 63]


class TestSplit:
    """Tests for split_train_val_test."""

    def test_ninety_trials(self):
        """Test 44 / 19 / 27 for 90 balanced trials."""
        labels = _balanced(30)
        split = split_train_val_test(labels, seed=0)
        assert split.sizes() == {"train": 44, "val": 19, "test": 27}
        everything = np.concatenate([split.train, split.val, split.test])
        assert sorted(everything) == list(range(90))

    def test_stratified(self):
        """Test per-class counts in each part."""
        labels = np.array(_balanced(30), dtype=object)
        split = split_train_val_test(list(labels), seed=5)
        for part, expected in ((split.test, 9), (split.train, None)):
            counts = [int(np.sum(labels[part] == label)) for label in CLASS_ORDER]
            if expected is not None:
                assert counts == [expected] * 3
            else:
                assert counts == [15, 15, 14]

    def test_seeded(self):
        """Test that the seed determines the partition."""
        labels = _balanced(10)
        first = split_train_val_test(labels, seed=2)
        second = split_train_val_test(labels, seed=2)
        other = split_train_val_test(labels, seed=3)
        assert all(np.array_equal(a, b) for a, b in zip(first, second))
        assert not all(np.array_equal(a, b) for a, b in zip(first, other))

    def test_integer_labels(self):
        """Test that class indices are accepted."""
        split = split_train_val_test([0, 1, 2] * 10, seed=1)
        assert sum(split.sizes().values()) == 30

    def test_small_class(self):
        """Test that every class needs three trials."""
        with pytest.raises(InvalidInputError, match="at least 3"):
            split_train_val_test(["MA", "MA", "MA", "MI", "MI", "IS", "IS", "IS"])

    def test_degenerate_ratios(self):
        """Test that ratios leaving an empty part are rejected."""
        with pytest.raises(InvalidInputError):
            split_train_val_test(_balanced(10), ratios=(1.0, 0.7))
