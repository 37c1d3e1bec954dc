"""Input loading and output checks shared by the handlers."""

from pathlib import Path

from ...domain import EpochSet, FeatureMatrix
from ...infrastructure.io import ensure_writable, load_epochs, load_features
from ...observability import get_logger, stage
from ...signal import MbllParams, load_mbll_constants
from ..config import EPOCHS_FILE, FEATURES_FILE, PipelineConfig
from ..pipeline import feature_matrix

logger = get_logger(__name__)


def check_outputs(cfg: PipelineConfig, *paths: Path) -> tuple[Path, ...]:
    """Fail before any work when an output exists and ``force`` is off."""
    return tuple(ensure_writable(path, cfg.force) for path in paths)


def mbll_params(cfg: PipelineConfig) -> MbllParams:
    with stage("config"):
        return load_mbll_constants(cfg.mbll_constants)


def read_epochs(cfg: PipelineConfig) -> EpochSet:
    path = cfg.input_path("epochs", EPOCHS_FILE)
    with stage("load", file=str(path)):
        return load_epochs(path)


def read_features(cfg: PipelineConfig) -> FeatureMatrix:
    """
    The feature file when present, else features assembled from the epochs.
    """
    path = cfg.input_path("features", FEATURES_FILE)
    if path.is_file() or cfg.features is not None:
        with stage("load", file=str(path)):
            return load_features(path)
    logger.info(
        "No feature file; assembling features from epochs",
        extra={"extra_fields": {"feature_set": str(cfg.feature_set)}},
    )
    return feature_matrix(cfg, read_epochs(cfg))
