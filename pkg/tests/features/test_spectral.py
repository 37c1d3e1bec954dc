"""Tests for the Hann periodogram and band power."""

import numpy as np
import pytest

from fnirs_bci.domain import InvalidInputError
from fnirs_bci.features import band_power, periodogram


class TestPeriodogram:
    """Tests for periodogram."""

    def test_bin_frequencies(self):
        """Test one-sided bins k * fs / L."""
        freqs, power = periodogram(np.zeros((3, 20)), 10.0)
        np.testing.assert_allclose(freqs, np.arange(11) * 0.5)
        assert power.shape == (3, 11)

    def test_zero_signal(self):
        """Test that silence has no power."""
        _, power = periodogram(np.zeros(16), 8.0)
        assert not power.any()


class TestBandPower:
    """Tests for band_power."""

    def test_on_bin_sine(self):
        """Test an on-bin 2 Hz sine: all of its L/4 power lands in [1, 3] Hz."""
        fs, length = 10.0, 20
        window = np.sin(2 * np.pi * 2.0 * np.arange(length) / fs)
        assert band_power(window, (1.0, 3.0), fs) == pytest.approx(length / 4, rel=1e-9)
        assert band_power(window, (4.0, 5.0), fs) == pytest.approx(0.0, abs=1e-9)

    def test_inclusive_edges(self):
        """Test that bins on both edges count."""
        fs, length = 10.0, 20
        window = np.sin(2 * np.pi * 2.0 * np.arange(length) / fs)
        narrow = band_power(window, (2.0, 2.0), fs)
        assert narrow == pytest.approx(length / 16 / (3 / 8), rel=1e-9)

    def test_band_above_nyquist(self):
        """Test that bands beyond fs/2 are rejected."""
        with pytest.raises(InvalidInputError):
            band_power(np.ones(20), (4.0, 6.0), 10.0)

    def test_too_few_samples(self):
        """Test that windows shorter than four samples are rejected."""
        with pytest.raises(InvalidInputError):
            band_power(np.ones(3), (1.0, 2.0), 10.0)
