"""Tests for confusion matrices, accuracy and ROC curves."""

from fractions import Fraction

import numpy as np
import pytest

from fnirs_bci.domain import CLASS_ORDER, InvalidInputError, TaskLabel
from fnirs_bci.evaluation import accuracy, confusion, eval_report, roc_ovr

BILSTM_COUNTS = [[9, 0, 1], [1, 7, 2], [0, 1, 9]]
SLDA_COUNTS = [[8, 0, 2], [2, 6, 2], [1, 2, 7]]


def _expand(counts):
    """(y_true, y_pred) label lists realizing a confusion matrix."""
    y_true, y_pred = [], []
    for actual, row in zip(CLASS_ORDER, counts):
        for predicted, count in zip(CLASS_ORDER, row):
            y_true += [actual] * count
            y_pred += [predicted] * count
    return y_true, y_pred


def _mann_whitney(scores, positives):
    pos = scores[positives]
    neg = scores[~positives]
    wins = sum(1.0 if p > n else 0.5 if p == n else 0.0 for p in pos for n in neg)
    return wins / (len(pos) * len(neg))


class TestConfusion:
    """Tests for confusion and accuracy."""

    @pytest.mark.parametrize(
        ("counts", "expected"), [(BILSTM_COUNTS, Fraction(25, 30)), (SLDA_COUNTS, Fraction(21, 30))]
    )
    def test_three_class_matrices(self, counts, expected):
        """Test that label lists rebuild the matrix and its trace ratio."""
        cm = confusion(*_expand(counts))
        assert cm.counts.tolist() == counts
        assert cm.total == 30
        assert Fraction(cm.correct, cm.total) == expected
        assert accuracy(cm) == pytest.approx(float(expected), abs=1e-15)

    def test_perfect_labeling(self):
        """Test that a labeling against itself is fully correct."""
        labels = [TaskLabel.MI, TaskLabel.IS, TaskLabel.MA, TaskLabel.MI]
        assert accuracy(confusion(labels, labels)) == 1.0

    def test_rows_follow_class_order(self):
        """Test rows are actual and columns predicted."""
        cm = confusion(["MA", "IS"], ["MI", "IS"])
        assert cm.row(TaskLabel.MA) == [0, 1, 0]
        assert cm.row(TaskLabel.IS) == [0, 0, 1]

    def test_length_mismatch(self):
        """Test that inputs must pair up."""
        with pytest.raises(InvalidInputError):
            confusion(["MA"], ["MA", "MI"])

    def test_empty_accuracy(self):
        """Test that an empty matrix has no accuracy."""
        with pytest.raises(InvalidInputError):
            accuracy(confusion([], []))


class TestRoc:
    """Tests for roc_ovr."""

    def test_auc_matches_pair_statistic(self, rng):
        """Test the area against the brute-force pair count with ties at one half."""
        scores = np.round(rng.random(60), 1)
        labels = rng.integers(0, 3, size=60)
        for positive in CLASS_ORDER:
            curve = roc_ovr(scores, labels, positive)
            expected = _mann_whitney(scores, labels == CLASS_ORDER.index(positive))
            assert curve.auc == pytest.approx(expected, abs=1e-12)

    def test_auc_oracle_over_seeded_vectors(self):
        """Test the trapezoidal area against pair counting on 100 seeded tied score vectors."""
        for seed in range(100):
            rng = np.random.default_rng(seed)
            scores = np.round(rng.random(200), 1)
            labels = rng.integers(0, 3, size=200)
            for index, positive in enumerate(CLASS_ORDER):
                expected = _mann_whitney(scores, labels == index)
                assert abs(roc_ovr(scores, labels, positive).auc - expected) <= 1e-12

    def test_curve_shape(self):
        """Test the threshold prefix, monotone rates and end points."""
        curve = roc_ovr([0.9, 0.8, 0.8, 0.1], ["MA", "MI", "MA", "IS"], "MA")
        assert np.isinf(curve.thresholds[0])
        np.testing.assert_allclose(curve.fpr, [0.0, 0.0, 0.5, 1.0])
        np.testing.assert_allclose(curve.tpr, [0.0, 0.5, 1.0, 1.0])
        assert curve.auc == pytest.approx(0.875)

    def test_perfect_and_inverted(self):
        """Test AUC 1 for separating scores and 0 when reversed."""
        labels = ["MA", "MA", "IS", "MI"]
        assert roc_ovr([0.9, 0.8, 0.2, 0.1], labels, "MA").auc == 1.0
        assert roc_ovr([0.1, 0.2, 0.8, 0.9], labels, "MA").auc == 0.0

    def test_probability_rows(self):
        """Test that [n x 3] rows select the positive column."""
        probs = np.array([[0.1, 0.8, 0.1], [0.6, 0.3, 0.1], [0.2, 0.2, 0.6]])
        curve = roc_ovr(probs, ["MI", "MA", "IS"], TaskLabel.MI)
        assert curve.auc == 1.0

    def test_single_class(self):
        """Test that one-class labels have no ROC."""
        with pytest.raises(InvalidInputError, match="both positive and negative"):
            roc_ovr([0.1, 0.2], ["MA", "MA"], "MA")


class TestEvalReport:
    """Tests for eval_report."""

    def test_report_fields(self):
        """Test accuracy, confusion, AUC keys and recorded sizes."""
        y_true, y_pred = _expand(BILSTM_COUNTS)
        probs = np.full((30, 3), 0.1)
        probs[np.arange(30), [CLASS_ORDER.index(label) for label in y_pred]] = 0.8
        report = eval_report(probs, y_true, seed=3, split_sizes={"train": 44, "val": 19})
        assert report.accuracy == pytest.approx(25 / 30)
        assert report.confusion.counts.tolist() == BILSTM_COUNTS
        assert set(report.auc) == {"MA", "MI", "IS"}
        metrics = report.to_metrics()
        assert metrics["n_test"] == 30
        assert metrics["seed"] == 3
        assert metrics["confusion"] == BILSTM_COUNTS
        assert metrics["split_sizes"] == {"train": 44, "val": 19}

    def test_wrong_width(self):
        """Test that probability rows need three columns."""
        with pytest.raises(InvalidInputError):
            eval_report(np.ones((2, 2)), ["MA", "MI"])
