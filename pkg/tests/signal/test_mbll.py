"""Tests for the modified Beer-Lambert conversion."""

import numpy as np
import pytest
from pydantic import ValidationError

from fnirs_bci.domain import ChannelMeta, ConfigurationError, Recording, SignalProcessingError
from fnirs_bci.signal import MbllParams, load_mbll_constants, mbll_convert, mbll_forward


def _recording(samples, n_channels=1, fs=1.0):
    channels = tuple(ChannelMeta(id=i) for i in range(1, n_channels + 1))
    return Recording(fs=fs, channels=channels, samples=np.atleast_2d(samples))


def _unit_params(extinction):
    return MbllParams(extinction=extinction, dpf_lo=1.0, dpf_hi=1.0, distance_cm=1.0)


class TestMbllConvert:
    """Tests for mbll_convert."""

    def test_zero_input(self, mbll_params):
        """Test that zero optical density gives zero concentration change."""
        hemo = mbll_convert(_recording([[0.0, 0.0]]), mbll_params)
        np.testing.assert_array_equal(hemo.streams, [[0.0, 0.0]])
        assert hemo.stream_names == ("ch01_HbO", "ch01_HbR")

    def test_identity_system(self):
        """Test that an identity system returns the input pair."""
        hemo = mbll_convert(_recording([[0.3, -0.2]]), _unit_params(np.eye(2)))
        np.testing.assert_allclose(hemo.streams, [[0.3, -0.2]], rtol=0, atol=1e-15)

    def test_closed_form_inverse(self):
        """Test the 2x2 closed-form solution."""
        hemo = mbll_convert(_recording([[1.0, 1.0]]), _unit_params([[1.0, 2.0], [3.0, 4.0]]))
        np.testing.assert_allclose(hemo.streams, [[-1.0, 1.0]], rtol=0, atol=1e-12)

    def test_inverse_consistency(self, mbll_params, rng):
        """Test that the forward model reproduces the converted optical density."""
        od = rng.standard_normal((2500, 8)) * 0.05
        hemo = mbll_convert(_recording(od, n_channels=4), mbll_params)
        np.testing.assert_allclose(mbll_forward(hemo.streams, mbll_params), od, rtol=0, atol=1e-10)

    def test_singular_extinction(self):
        """Test that a singular extinction table is rejected."""
        with pytest.raises(ValidationError, match="singular"):
            _unit_params([[1.0, 2.0], [2.0, 4.0]])


class TestMbllConstants:
    """Tests for the keyed MBLL constants file."""

    def test_packaged_defaults(self):
        """Test the packaged 760/850 nm table."""
        params = load_mbll_constants()
        assert params.dpf_lo == 6.0
        assert params.extinction[0, 1] == pytest.approx(1.5485)

    def test_missing_file(self, tmp_path):
        """Test that a missing file is a configuration error."""
        with pytest.raises(ConfigurationError):
            load_mbll_constants(tmp_path / "absent.env")

    def test_unknown_key(self, tmp_path):
        """Test that unknown keys are rejected."""
        path = tmp_path / "mbll.env"
        path.write_text(
            "epsilon_hbo_lo=1\nepsilon_hbo_hi=2\nepsilon_hbr_lo=3\nepsilon_hbr_hi=4\n"
            "dpf_lo=6\ndpf_hi=6\nwavelength=760\n"
        )
        with pytest.raises(ConfigurationError, match="unknown"):
            load_mbll_constants(path)

    def test_missing_key(self, tmp_path):
        """Test that every constant is required."""
        path = tmp_path / "mbll.env"
        path.write_text("epsilon_hbo_lo=1\n")
        with pytest.raises(ConfigurationError, match="missing"):
            load_mbll_constants(path)

    def test_non_finite_input(self, mbll_params):
        """Test that conversion refuses non-finite samples."""
        bad = Recording.model_construct(
            fs=1.0, channels=(ChannelMeta(id=1),), samples=np.array([[np.inf, 0.0]]), t0=0.0
        )
        with pytest.raises(SignalProcessingError):
            mbll_convert(bad, mbll_params)
