"""Tests for configuration resolution."""

from pathlib import Path

import pytest

from fnirs_bci.application import (
    CONFIG_ENV_VAR,
    ClassifierName,
    Pipeline,
    PipelineConfig,
    load_pipeline_config,
    read_config_file,
)
from fnirs_bci.domain import ConfigurationError
from fnirs_bci.features import FeatureSet


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ("FNIRS_CONFIG", "FNIRS_LR", "FNIRS_SEED", "FNIRS_GRID_LR", "FNIRS_PIPELINE"):
        monkeypatch.delenv(name, raising=False)


def _config_file(tmp_path, text, name="run.env"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


class TestPrecedence:
    """Tests for defaults < environment < file < flags."""

    def test_defaults(self):
        """Test the built-in defaults."""
        cfg = load_pipeline_config()
        assert cfg.seed == 0
        assert cfg.lr == 1e-3
        assert cfg.pipeline is Pipeline.RAW_ICA
        assert cfg.classifier is ClassifierName.SLDA
        assert cfg.feature_set is FeatureSet.TEMPORAL_MEAN
        assert cfg.out == Path("out")

    def test_environment_over_defaults(self, monkeypatch):
        """Test that FNIRS_* variables override defaults."""
        monkeypatch.setenv("FNIRS_LR", "0.01")
        monkeypatch.setenv("FNIRS_PIPELINE", "features")
        cfg = load_pipeline_config()
        assert cfg.lr == 0.01
        assert cfg.pipeline is Pipeline.FEATURES

    def test_file_over_environment(self, monkeypatch, tmp_path):
        """Test that the config file overrides the environment."""
        monkeypatch.setenv("FNIRS_LR", "0.01")
        path = _config_file(tmp_path, "lr=0.02\nseed=7\n")
        cfg = load_pipeline_config(path)
        assert cfg.lr == 0.02
        assert cfg.seed == 7

    def test_flags_over_file(self, tmp_path):
        """Test that explicit overrides beat the file and None is ignored."""
        path = _config_file(tmp_path, "lr=0.02\nseed=7\n")
        cfg = load_pipeline_config(path, {"lr": 0.03, "seed": None})
        assert cfg.lr == 0.03
        assert cfg.seed == 7

    def test_config_path_from_environment(self, monkeypatch, tmp_path):
        """Test that FNIRS_CONFIG names the default config file."""
        monkeypatch.setenv(CONFIG_ENV_VAR, str(_config_file(tmp_path, "units=8\n")))
        assert load_pipeline_config().units == 8


class TestConfigFile:
    """Tests for read_config_file."""

    def test_prefixed_and_uppercase_keys(self, tmp_path):
        """Test that FNIRS_-prefixed, upper-case keys are accepted."""
        path = _config_file(tmp_path, "# comment\nFNIRS_MAX_EPOCHS=5\nBatch_Size=2\n")
        assert read_config_file(path) == {"max_epochs": "5", "batch_size": "2"}

    def test_unknown_key(self, tmp_path):
        """Test that unknown keys are configuration errors."""
        path = _config_file(tmp_path, "learning_rate=0.1\n")
        with pytest.raises(ConfigurationError, match="unknown config keys"):
            read_config_file(path)

    def test_missing_file(self, tmp_path):
        """Test that a missing file is a configuration error."""
        with pytest.raises(ConfigurationError, match="not found"):
            load_pipeline_config(tmp_path / "absent.env")

    def test_invalid_value(self, tmp_path):
        """Test that a value outside its range names the key."""
        path = _config_file(tmp_path, "lr=-1\n")
        with pytest.raises(ConfigurationError, match="lr"):
            load_pipeline_config(path)

    def test_unknown_pipeline(self):
        """Test that an unknown pipeline name is rejected."""
        with pytest.raises(ConfigurationError, match="pipeline"):
            load_pipeline_config(overrides={"pipeline": "deep"})


class TestValidation:
    """Tests for cross-field checks and derived settings."""

    def test_grid_lists(self, tmp_path):
        """Test that comma-separated grid axes are parsed."""
        path = _config_file(tmp_path, "grid_lr=1e-3,1e-2\ngrid_dropout=0.1\ngrid_units=8,16\n")
        cfg = load_pipeline_config(path)
        assert cfg.has_grid
        assert cfg.grid() == {"lr": [1e-3, 1e-2], "dropout": [0.1], "units": [8, 16]}

    def test_grid_all_or_none(self):
        """Test that a partial grid is rejected."""
        with pytest.raises(ConfigurationError, match="together"):
            load_pipeline_config(overrides={"grid_lr": "1e-3,1e-2"})

    def test_band_order(self):
        """Test that the band edges must be ordered."""
        with pytest.raises(ConfigurationError, match="band_lo_hz"):
            load_pipeline_config(overrides={"band_lo_hz": 0.1, "band_hi_hz": 0.05})

    def test_kernel_choice(self):
        """Test that only rbf and linear kernels are accepted."""
        with pytest.raises(ConfigurationError, match="kernel"):
            load_pipeline_config(overrides={"kernel": "poly"})

    def test_snapshot_omits_runtime_fields(self):
        """Test that the stored snapshot leaves out paths and force."""
        snapshot = PipelineConfig(seed=4, force=True).snapshot()
        assert snapshot["seed"] == 4
        assert "out" not in snapshot
        assert "force" not in snapshot
        assert snapshot["pipeline"] == "raw_ica"

    def test_sub_configs(self):
        """Test that sub-configurations carry the shared settings."""
        cfg = PipelineConfig(seed=9, lr=0.005, window_length_s=4.0, n_trials_per_class=3)
        assert cfg.train_config().lr == 0.005
        assert cfg.train_config().seed == 9
        assert cfg.window_spec().length_s == 4.0
        assert cfg.synth_config().n_trials_per_class == 3
        assert cfg.synth_config(seed=2).seed == 2

    def test_input_paths(self):
        """Test that inputs default to fixed names inside the output directory."""
        cfg = PipelineConfig(out=Path("run"), model=Path("elsewhere/model.fnirs"))
        assert cfg.input_path("epochs", "epochs.csv") == Path("run/epochs.csv")
        assert cfg.input_path("model", "model.fnirs") == Path("elsewhere/model.fnirs")
