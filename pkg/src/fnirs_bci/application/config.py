"""
Pipeline configuration.

Values are resolved from (lowest to highest precedence) field defaults,
``FNIRS_*`` environment variables, a keyed ``key=value`` config file and
explicit overrides (the CLI flags).
"""

import os
from fnirs_bci._compat import StrEnum
from pathlib import Path
from typing import Annotated, Any, Mapping, Optional

from dotenv import dotenv_values
from pydantic import Field, ValidationError, field_validator, model_validator
from pydantic_settings import BaseSettings, NoDecode, SettingsConfigDict

from ..classifiers import AnnConfig
from ..domain import ConfigurationError
from ..features import FeatureSet, WindowSpec
from ..infrastructure.io import SynthConfig
from ..nn import TrainConfig
from ..observability import ObservabilityConfig

CONFIG_ENV_VAR = "FNIRS_CONFIG"

# Fixed file names inside the output directory.
RECORDING_FILE = "recording.csv"
EVENTS_FILE = "events.csv"
CHANNELS_FILE = "channels.csv"
EPOCHS_FILE = "epochs.csv"
FEATURES_FILE = "features.csv"
MODEL_FILE = "model.fnirs"
TRAIN_REPORT_FILE = "train_report.csv"
GRID_FILE = "grid.csv"
CROSSVAL_FILE = "crossval.csv"
METRICS_FILE = "metrics.json"
CORRELATION_ORIGINAL_FILE = "correlation_original.csv"
CORRELATION_KPCA_FILE = "correlation_kpca.csv"
TIMECOURSE_FILE = "timecourse.csv"
SPECTRUM_FILE = "spectrum.csv"
COMPARISON_FILE = "comparison.csv"

# Excluded from the snapshot stored in model containers.
_RUNTIME_FIELDS = frozenset(
    {
        "out",
        "recording",
        "events",
        "channels",
        "epochs",
        "features",
        "model",
        "mbll_constants",
        "force",
        "log_level",
        "log_format",
        "metrics_file",
    }
)


class Pipeline(StrEnum):
    RAW_ICA = "raw_ica"
    FEATURES = "features"
    FEATURES_KPCA = "features_kpca"


class ClassifierName(StrEnum):
    SLDA = "slda"
    LOGREG = "logreg"
    SVM = "svm"
    ANN = "ann"


class Subset(StrEnum):
    TEST = "test"
    VAL = "val"
    TRAIN = "train"
    ALL = "all"


def _split_list(value: Any) -> Any:
    """Comma-separated text to a list; other values pass through."""
    if isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip()]
    return value


class PipelineConfig(BaseSettings):
    """Every setting of the CLI commands, flat so it maps onto ``key=value`` files."""

    model_config = SettingsConfigDict(
        env_prefix="FNIRS_",
        frozen=True,
        extra="forbid",
        use_enum_values=False,
    )

    # Paths; inputs default to the fixed file names inside ``out``.
    out: Path = Path("out")
    recording: Optional[Path] = None
    events: Optional[Path] = None
    channels: Optional[Path] = None
    epochs: Optional[Path] = None
    features: Optional[Path] = None
    model: Optional[Path] = None
    mbll_constants: Optional[Path] = None

    pipeline: Pipeline = Pipeline.RAW_ICA
    classifier: ClassifierName = ClassifierName.SLDA
    feature_set: FeatureSet = FeatureSet.TEMPORAL_MEAN
    seed: int = Field(default=0, ge=0, lt=2**63)
    force: bool = False

    # Synthetic data
    n_trials_per_class: int = Field(default=30, ge=1)
    n_channels: int = Field(default=16, ge=1)
    synth_fs: float = Field(default=13.3, gt=0)

    # Pre-processing
    fs_override: Optional[float] = Field(default=None, gt=0)
    per_channel_distance: bool = False
    filter_order: int = Field(default=3, ge=1)
    band_lo_hz: float = Field(default=0.01, gt=0)
    band_hi_hz: float = Field(default=0.09, gt=0)
    epoch_start_s: float = -5.0
    epoch_end_s: float = 25.0
    baseline_start_s: float = -1.0
    baseline_end_s: float = 0.0

    # Features
    window_length_s: float = Field(default=2.0, gt=0)
    window_overlap: float = Field(default=0.5, ge=0.0, lt=1.0)

    # Splits and dimension reduction
    split_outer: float = Field(default=0.7, gt=0.0, lt=1.0)
    split_inner: float = Field(default=0.7, gt=0.0, lt=1.0)
    n_components: int = Field(default=20, ge=1)
    kernel: str = "rbf"
    gamma: Optional[float] = Field(default=None, gt=0)
    ica_tol: float = Field(default=1e-6, gt=0)
    ica_max_iter: int = Field(default=500, ge=1)

    # Network training
    lr: float = Field(default=1e-3, gt=0)
    batch_size: int = Field(default=4, ge=1)
    max_epochs: int = Field(default=100, ge=1)
    early_stop_patience: int = Field(default=10, ge=0)
    units: int = Field(default=32, ge=1)
    dense_units: int = Field(default=16, ge=1)
    dropout: float = Field(default=0.1, ge=0.0, lt=1.0)
    recurrent_dropout: float = Field(default=0.1, ge=0.0, lt=1.0)
    noise_sigma: float = Field(default=0.1, ge=0.0)
    l2: float = Field(default=0.1, ge=0.0)
    time_stride: int = Field(default=3, ge=1)
    grid_lr: Annotated[tuple[float, ...], NoDecode] = ()
    grid_dropout: Annotated[tuple[float, ...], NoDecode] = ()
    grid_units: Annotated[tuple[int, ...], NoDecode] = ()

    # Baselines
    ann_hidden: int = Field(default=32, ge=1)
    cv_k: int = Field(default=10, ge=2)
    cv_repeats: int = Field(default=10, ge=1)

    # Evaluation and comparison
    subset: Subset = Subset.TEST
    compare_seeds: Annotated[tuple[int, ...], NoDecode] = (0, 1, 2, 3, 4)

    # Observability
    log_level: str = "INFO"
    log_format: str = "text"
    metrics_file: Optional[Path] = None

    @field_validator("grid_lr", "grid_dropout", "grid_units", "compare_seeds", mode="before")
    @classmethod
    def _split_lists(cls, value: Any) -> Any:
        return _split_list(value)

    @field_validator("kernel")
    @classmethod
    def _check_kernel(cls, value: str) -> str:
        if value not in ("rbf", "linear"):
            raise ValueError(f"kernel must be 'rbf' or 'linear', got {value!r}")
        return value

    @field_validator("log_format")
    @classmethod
    def _check_log_format(cls, value: str) -> str:
        if value not in ("json", "text"):
            raise ValueError(f"log_format must be 'json' or 'text', got {value!r}")
        return value

    @model_validator(mode="after")
    def _check_ranges(self) -> "PipelineConfig":
        if self.band_lo_hz >= self.band_hi_hz:
            raise ValueError("band_lo_hz must be below band_hi_hz")
        if self.epoch_start_s >= self.epoch_end_s:
            raise ValueError("epoch_start_s must be below epoch_end_s")
        if self.baseline_start_s >= self.baseline_end_s:
            raise ValueError("baseline_start_s must be below baseline_end_s")
        grid = (self.grid_lr, self.grid_dropout, self.grid_units)
        if any(grid) and not all(grid):
            raise ValueError("grid_lr, grid_dropout and grid_units must be given together")
        if not self.compare_seeds:
            raise ValueError("compare_seeds needs at least one seed")
        return self

    # Derived paths

    def input_path(self, field: str, default_name: str) -> Path:
        """The configured path for ``field``, else ``out/default_name``."""
        value = getattr(self, field)
        return Path(value) if value is not None else self.out / default_name

    def output_path(self, name: str) -> Path:
        return self.out / name

    # Sub-configurations

    @property
    def has_grid(self) -> bool:
        return bool(self.grid_lr)

    def grid(self) -> dict[str, list[Any]]:
        return {
            "lr": list(self.grid_lr),
            "dropout": list(self.grid_dropout),
            "units": list(self.grid_units),
        }

    def synth_config(self, seed: Optional[int] = None) -> SynthConfig:
        return SynthConfig(
            seed=self.seed if seed is None else seed,
            n_trials_per_class=self.n_trials_per_class,
            n_channels=self.n_channels,
            fs=self.synth_fs,
        )

    def window_spec(self) -> WindowSpec:
        return WindowSpec(length_s=self.window_length_s, overlap_frac=self.window_overlap)

    def train_config(self) -> TrainConfig:
        return TrainConfig(
            lr=self.lr,
            batch_size=self.batch_size,
            max_epochs=self.max_epochs,
            early_stop_patience=self.early_stop_patience,
            noise_sigma=self.noise_sigma,
            dropout=self.dropout,
            recurrent_dropout=self.recurrent_dropout,
            l2=self.l2,
            units=self.units,
            dense_units=self.dense_units,
            time_stride=self.time_stride,
            seed=self.seed,
        )

    def ann_config(self) -> AnnConfig:
        return AnnConfig(hidden=self.ann_hidden, seed=self.seed)

    def observability_config(self) -> ObservabilityConfig:
        return ObservabilityConfig(
            log_level=self.log_level,
            log_format=self.log_format,
            metrics_file=str(self.metrics_file) if self.metrics_file else None,
        )

    def snapshot(self) -> dict[str, Any]:
        """JSON-ready settings stored in model containers (runtime-only fields omitted)."""
        return self.model_dump(mode="json", exclude=set(_RUNTIME_FIELDS))


def read_config_file(path: str | Path) -> dict[str, str]:
    """
    Parse a ``key=value`` config file.

    Keys are field names of ``PipelineConfig``, case-insensitive, with an
    optional ``FNIRS_`` prefix.

    Raises:
        ConfigurationError: Missing file or unknown keys
    """
    source = Path(path)
    if not source.is_file():
        raise ConfigurationError(f"config file not found: {source}")
    values: dict[str, str] = {}
    for key, value in dotenv_values(source).items():
        name = key.lower().removeprefix("fnirs_")
        if value is None:
            raise ConfigurationError(f"{source}: key {key!r} has no value")
        values[name] = value
    unknown = sorted(set(values) - set(PipelineConfig.model_fields))
    if unknown:
        raise ConfigurationError(f"{source}: unknown config keys {unknown}")
    return values


def load_pipeline_config(
    config_path: Optional[str | Path] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> PipelineConfig:
    """
    Resolve the pipeline configuration.

    Args:
        config_path: Config file; ``$FNIRS_CONFIG`` when omitted, none if unset
        overrides: Highest-precedence values; ``None`` entries are ignored

    Raises:
        ConfigurationError: Unreadable file, unknown keys or invalid values
    """
    path = config_path or os.environ.get(CONFIG_ENV_VAR) or None
    values: dict[str, Any] = read_config_file(path) if path else {}
    values.update({key: value for key, value in (overrides or {}).items() if value is not None})
    try:
        return PipelineConfig(**values)
    except ValidationError as exc:
        error = exc.errors()[0]
        where = ".".join(str(part) for part in error["loc"]) or "config"
        raise ConfigurationError(f"{where}: {error['msg']}") from exc
