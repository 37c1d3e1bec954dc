"""Tests for the synthetic session generator."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from fnirs_bci.domain import CLASS_ORDER, TaskLabel
from fnirs_bci.infrastructure.io import SynthConfig, generate_synthetic
from fnirs_bci.infrastructure.io.synthetic import hrf_kernel, task_response


class TestGenerateSynthetic:
    """Tests for generate_synthetic."""

    def test_deterministic(self, small_synth_config, small_session, mbll_params):
        """Test that the output is a pure function of the configuration."""
        rec, ev = generate_synthetic(small_synth_config, mbll_params)
        np.testing.assert_array_equal(rec.samples, small_session[0].samples)
        np.testing.assert_array_equal(ev.onsets, small_session[1].onsets)
        assert ev.labels == small_session[1].labels

    def test_seed_changes_output(self, small_synth_config, small_session, mbll_params):
        """Test that another seed gives another session."""
        rec, _ = generate_synthetic(small_synth_config.model_copy(update={"seed": 8}), mbll_params)
        assert not np.array_equal(rec.samples, small_session[0].samples)

    def test_layout(self, small_synth_config, small_session):
        """Test class balance, channel count and recording length."""
        rec, ev = small_session
        cfg = small_synth_config
        assert len(ev) == 3 * cfg.n_trials_per_class
        assert all(ev.labels.count(label) == cfg.n_trials_per_class for label in CLASS_ORDER)
        assert rec.samples.shape[1] == 2 * cfg.n_channels
        assert rec.fs == cfg.fs
        expected = math.ceil((ev.onsets[-1] + cfg.task_s + cfg.tail_s) * cfg.fs)
        assert rec.n_samples == expected

    def test_onset_spacing(self, small_synth_config, small_session):
        """Test that onsets follow the intro/task/rest block structure."""
        _, ev = small_session
        cfg = small_synth_config
        assert ev.onsets[0] == pytest.approx(cfg.lead_in_s + cfg.intro_s)
        gaps = np.diff(ev.onsets)
        low = cfg.task_s + cfg.rest_s + cfg.intro_s - 1e-3
        high = low + cfg.rest_jitter_s + 2e-3
        assert np.all((gaps >= low) & (gaps <= high))
        np.testing.assert_allclose(ev.onsets * 1000, np.round(ev.onsets * 1000), atol=1e-6)

    def test_rest_class_is_flat_without_noise(self, mbll_params):
        """Test that a noiseless IS-only session carries no signal."""
        cfg = SynthConfig(
            seed=1,
            n_trials_per_class=2,
            n_channels=2,
            amplitude_ma=0.0,
            amplitude_mi=0.0,
            oscillation_mi=0.0,
            cardiac=0.0,
            respiratory=0.0,
            mayer=0.0,
            drift=0.0,
            white=0.0,
        )
        rec, _ = generate_synthetic(cfg, mbll_params)
        np.testing.assert_array_equal(rec.samples, 0.0)

    def test_lapsed_motor_imagery_is_flat(self, mbll_params):
        """Test that lapsed MI trials inject nothing."""
        cfg = _mi_only(mi_lapse_rate=1.0)
        rec, _ = generate_synthetic(cfg, mbll_params)
        np.testing.assert_array_equal(rec.samples, 0.0)

    def test_motor_imagery_oscillation(self, mbll_params):
        """Test that the MI oscillation is strongest on the motor group and averages out."""
        cfg = _mi_only(n_trials_per_class=40, mi_lapse_rate=0.0)
        rec, ev = generate_synthetic(cfg, mbll_params)
        frontal, motor = np.abs(rec.samples[:, :4]).max(), np.abs(rec.samples[:, 4:]).max()
        assert motor > frontal > 0.0
        starts = [
            int(math.floor(onset * cfg.fs + 0.5))
            for onset, label in zip(ev.onsets, ev.labels)
            if label is TaskLabel.MI
        ]
        length = int(round(15.0 * cfg.fs))
        segments = np.stack([rec.samples[s : s + length, 4:] for s in starts])
        per_trial = np.abs(segments.mean(axis=1)).mean(axis=0)
        assert np.all(np.abs(segments.mean(axis=(0, 1))) < 0.5 * per_trial)

    def test_oscillation_band_checked(self):
        """Test that the oscillation band must be ordered and below Nyquist."""
        with pytest.raises(ValidationError, match="oscillation_hz"):
            SynthConfig(oscillation_hz=(0.08, 0.04))

    def test_negative_weight_rejected(self):
        """Test that channel-group weights must be non-negative."""
        with pytest.raises(ValidationError, match="non-negative"):
            SynthConfig(weights_ma=(1.0, -0.5))


class TestResponseShape:
    """Tests for the haemodynamic response helpers."""

    def test_kernel_peak(self):
        """Test that the kernel has unit peak about 6 s after onset."""
        fs = 10.0
        kernel = hrf_kernel(fs)
        assert kernel.max() == pytest.approx(1.0)
        assert 5.0 <= np.argmax(kernel) / fs <= 7.0

    def test_task_response_unit_peak(self):
        """Test that a task boxcar response is scaled to unit peak."""
        response = task_response(10.0, 10.0)
        assert np.abs(response).max() == pytest.approx(1.0)
        assert response[0] == pytest.approx(0.0, abs=1e-6)


def _mi_only(**overrides) -> SynthConfig:
    """Noiseless session whose only signal is the MI oscillation."""
    fields = {
        "seed": 3,
        "n_trials_per_class": 2,
        "n_channels": 4,
        "amplitude_ma": 0.0,
        "amplitude_mi": 0.0,
        "cardiac": 0.0,
        "respiratory": 0.0,
        "mayer": 0.0,
        "drift": 0.0,
        "white": 0.0,
    }
    fields.update(overrides)
    return SynthConfig(**fields)
