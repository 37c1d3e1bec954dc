"""Tests for segmentation and baseline correction."""

import numpy as np
import pytest

from fnirs_bci.domain import EventList, HemoSeries, SignalProcessingError
from fnirs_bci.signal import baseline_correct, segment_epochs


def _ramp_series(fs, n_samples, n_streams=2):
    streams = np.arange(n_samples * n_streams, dtype=np.float64).reshape(n_samples, n_streams)
    return HemoSeries(fs=fs, streams=streams, stream_names=tuple(f"s{i}" for i in range(n_streams)))


class TestSegmentEpochs:
    """Tests for segment_epochs."""

    def test_sample_count_at_13_3_hz(self):
        """Test 399 samples for the default window at 13.3 Hz."""
        es = segment_epochs(_ramp_series(13.3, 2000), EventList.from_pairs([(20.0, "MA")]))
        assert es.n_samples == 399
        assert es.first_offset == -66

    def test_sample_count_at_10_hz(self):
        """Test 301 samples for exact-integer edges."""
        es = segment_epochs(_ramp_series(10.0, 1000), EventList.from_pairs([(10.0, "MI")]))
        assert es.n_samples == 301
        assert es.first_offset == -50

    def test_pure_slice(self):
        """Test that every epoch sample is the recording sample."""
        h = _ramp_series(10.0, 1000)
        es = segment_epochs(h, EventList.from_pairs([(10.0, "MA"), (40.0, "IS")]))
        onset = 400
        np.testing.assert_array_equal(es.data[1], h.streams[onset - 50 : onset + 251].T)

    def test_out_of_bounds(self):
        """Test that a window before the recording start names the trial."""
        with pytest.raises(SignalProcessingError, match="trial 1"):
            segment_epochs(_ramp_series(13.3, 2000), EventList.from_pairs([(2.0, "MA")]))


class TestBaselineCorrect:
    """Tests for baseline_correct."""

    def _epochs(self, fs, values):
        h = HemoSeries(
            fs=fs, streams=np.tile(values[:, None], (1, 1)), stream_names=("s0",)
        )
        return segment_epochs(h, EventList.from_pairs([(10.0, "MA")]))

    def test_constant_becomes_zero(self):
        """Test that a constant epoch is zeroed."""
        es = baseline_correct(self._epochs(13.3, np.full(1000, 4.0)))
        np.testing.assert_allclose(es.data, 0.0, atol=1e-12)

    def test_ramp_reference_mean(self):
        """Test the reference mean of a ramp over k = -13..-1."""
        fs = 13.3
        es = self._epochs(fs, np.zeros(1000))
        ramp = 0.1 * (es.first_offset + np.arange(es.n_samples))
        corrected = baseline_correct(es.with_data(ramp[None, None, :], es.stream_names))
        assert corrected.data[0, 0, es.index_of(0)] == pytest.approx(0.7, abs=1e-12)
        reference = corrected.data[0, 0, es.index_of(-13) : es.index_of(0)]
        assert reference.mean() == pytest.approx(0.0, abs=1e-12)

    def test_zero_reference_unchanged(self):
        """Test that a zero pre-onset reference leaves the epoch as is."""
        es = self._epochs(13.3, np.zeros(1000))
        values = np.where(np.arange(es.n_samples) >= es.index_of(0), 5.0, 0.0)
        shaped = es.with_data(values[None, None, :], es.stream_names)
        np.testing.assert_array_equal(baseline_correct(shaped).data, shaped.data)

    def test_reference_outside_window(self):
        """Test that the reference must lie inside the epoch."""
        es = self._epochs(13.3, np.zeros(1000))
        with pytest.raises(SignalProcessingError):
            baseline_correct(es, (-10.0, -6.0))
