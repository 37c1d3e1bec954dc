"""Tests for the exception hierarchy and seeded random streams."""

import numpy as np
import pytest

from fnirs_bci.domain import (
    ConfigurationError,
    DataFormatError,
    FnirsError,
    InvalidInputError,
    RandomStream,
    TrainingDivergedError,
    derive_seed,
    make_rng,
)


class TestErrors:
    """Tests for error messages and CLI lines."""

    def test_cli_line(self):
        """Test the single-line error format."""
        error = InvalidInputError("bad value", stage="train")
        assert error.cli_line() == "error: train: bad value"
        assert error.error_code == "INVALID_INPUT"

    def test_data_format_location(self):
        """Test that path, 1-based row and column prefix the message."""
        error = DataFormatError("not a number", path="rec.csv", row=3, column="t")
        assert error.message == "rec.csv, row 3, column t: not a number"

    def test_configuration_stage(self):
        """Test that configuration errors default to the config stage."""
        assert ConfigurationError("x").cli_line() == "error: config: x"

    def test_diverged_names_layer(self):
        """Test that divergence reports layer, epoch and batch."""
        error = TrainingDivergedError("02_bilstm", 4, 7)
        assert isinstance(error, FnirsError)
        assert "02_bilstm" in error.message
        assert (error.epoch, error.batch) == (4, 7)


class TestRandomStreams:
    """Tests for seeded stream derivation."""

    def test_same_seed_same_draws(self):
        """Test reproducibility."""
        a = make_rng(5, RandomStream.INIT).standard_normal(4)
        b = make_rng(5, RandomStream.INIT).standard_normal(4)
        np.testing.assert_array_equal(a, b)

    def test_streams_are_independent(self):
        """Test that different spawn keys give different draws."""
        a = make_rng(5, RandomStream.INIT).standard_normal(4)
        b = make_rng(5, RandomStream.SHUFFLE).standard_normal(4)
        assert not np.array_equal(a, b)

    def test_negative_seed(self):
        """Test that negative seeds are rejected."""
        with pytest.raises(ValueError):
            make_rng(-1)

    def test_derive_seed_range(self):
        """Test that derived seeds are 63-bit and key dependent."""
        seeds = {derive_seed(0, RandomStream.GRID, i) for i in range(10)}
        assert len(seeds) == 10
        assert all(0 <= s < 2**63 for s in seeds)
