"""Tests for sliding windows and per-window statistics."""

import numpy as np
import pytest

from fnirs_bci.domain import InvalidInputError
from fnirs_bci.features import WindowSpec, max_coverage, sliding_windows, stat_features, stat_matrix


class TestWindowSpec:
    """Tests for window length, hop and count arithmetic."""

    def test_default_at_13_3_hz(self):
        """Test L=26, hop=13 and 29 windows over a 399-sample epoch."""
        w = WindowSpec()
        assert w.length_samples(13.3) == 26
        assert w.hop_samples(13.3) == 13
        assert w.count(399, 13.3) == 29
        assert max_coverage(w, 13.3) == 2

    def test_no_overlap(self):
        """Test that zero overlap makes the hop equal the length."""
        w = WindowSpec(length_s=2.0, overlap_frac=0.0)
        assert w.hop_samples(10.0) == 20
        assert w.count(100, 10.0) == 5

    def test_shorter_than_window(self):
        """Test that no window fits a series shorter than L."""
        assert WindowSpec().count(10, 13.3) == 0

    def test_invalid_overlap(self):
        """Test that overlap must lie in [0, 1)."""
        with pytest.raises(ValueError):
            WindowSpec(overlap_frac=1.0)


class TestSlidingWindows:
    """Tests for sliding_windows."""

    def test_shape_and_starts(self):
        """Test the window tensor layout and hop positions."""
        x = np.arange(399, dtype=float).reshape(1, 1, 399)
        windows = sliding_windows(x, WindowSpec(), 13.3)
        assert windows.shape == (1, 1, 29, 26)
        np.testing.assert_array_equal(windows[0, 0, :, 0], np.arange(29) * 13)
        assert windows[0, 0, -1, -1] == 28 * 13 + 25

    def test_epoch_shorter_than_window(self):
        """Test that an epoch shorter than one window is rejected."""
        with pytest.raises(InvalidInputError, match="shorter"):
            sliding_windows(np.zeros(10), WindowSpec(), 13.3)

    def test_window_too_small(self):
        """Test that windows of fewer than two samples are rejected."""
        with pytest.raises(InvalidInputError):
            sliding_windows(np.zeros(100), WindowSpec(length_s=0.1), 13.3)


class TestStatistics:
    """Tests for mean, peak, skewness and kurtosis."""

    def test_constant_window(self):
        """Test that a constant window has zero shape statistics."""
        assert stat_features(np.array([2.0, 2.0, 2.0, 2.0])) == (2.0, 2.0, 0.0, 0.0)

    def test_alternating_window(self):
        """Test the excess kurtosis of a two-point distribution."""
        mean, peak, skewness, kurtosis = stat_features(np.array([1.0, -1.0, 1.0, -1.0]))
        assert (mean, peak, skewness) == pytest.approx((0.0, 1.0, 0.0), abs=1e-12)
        assert kurtosis == pytest.approx(-2.0, abs=1e-12)

    def test_peak_is_absolute(self):
        """Test that the peak is the largest magnitude."""
        assert stat_features(np.array([0.5, -3.0, 1.0]))[1] == 3.0

    def test_skewed_window(self):
        """Test skewness against the biased moment formula."""
        x = np.array([0.0, 0.0, 0.0, 4.0])
        centered = x - x.mean()
        expected = np.mean(centered**3) / np.mean(centered**2) ** 1.5
        assert stat_features(x)[2] == pytest.approx(expected, rel=1e-12)

    def test_matrix_layout(self, rng):
        """Test that the statistic axis replaces the sample axis."""
        windows = rng.standard_normal((3, 2, 5, 26))
        values = stat_matrix(windows)
        assert values.shape == (3, 2, 5, 4)
        np.testing.assert_allclose(values[1, 0, 2], stat_features(windows[1, 0, 2]))
