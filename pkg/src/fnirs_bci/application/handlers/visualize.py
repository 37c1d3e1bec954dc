"""Plot-ready CSV exports: feature correlations, task time courses and spectra."""

import numpy as np
from sklearn.preprocessing import StandardScaler

from ...dimred import kpca_fit_transform
from ...domain import CLASS_ORDER, EpochSet, InvalidInputError, TaskLabel
from ...features import periodogram
from ...infrastructure.io import write_correlation_csv, write_spectrum_csv, write_timecourse_csv
from ...observability import stage
from ..commands import CommandResult, VisualizeCommand
from ..config import (
    CORRELATION_KPCA_FILE,
    CORRELATION_ORIGINAL_FILE,
    SPECTRUM_FILE,
    TIMECOURSE_FILE,
    PipelineConfig,
)
from ..mediator import RequestHandler
from ..pipeline import feature_matrix
from .common import check_outputs, read_epochs

HBO_SUFFIX = "_HbO"


def correlation_matrix(values: np.ndarray) -> np.ndarray:
    """
    Pearson correlation between columns.

    Constant columns correlate 0 with everything else and 1 with themselves.
    """
    values = np.asarray(values, dtype=np.float64)
    with np.errstate(invalid="ignore", divide="ignore"):
        r = np.atleast_2d(np.corrcoef(values, rowvar=False))
    r = np.nan_to_num(r, nan=0.0)
    np.fill_diagonal(r, 1.0)
    return r


def kpca_scores(cfg: PipelineConfig, values: np.ndarray) -> np.ndarray:
    Z = StandardScaler().fit_transform(values)
    n_components = min(cfg.n_components, Z.shape[0] - 1)
    _, scores = kpca_fit_transform(Z, cfg.kernel, n_components, cfg.gamma)
    return scores


def _task_streams(es: EpochSet) -> np.ndarray:
    """Oxygenated-hemoglobin streams when present, else every stream."""
    hbo = [i for i, name in enumerate(es.stream_names) if name.endswith(HBO_SUFFIX)]
    return np.asarray(hbo or range(es.n_streams), dtype=np.int64)


def _by_class(es: EpochSet, per_trial: np.ndarray) -> dict[TaskLabel, np.ndarray]:
    """Mean over the trials of each class of a per-trial curve [trials x points]."""
    indices = es.label_indices
    curves = {}
    for k, label in enumerate(CLASS_ORDER):
        members = indices == k
        curves[label] = (
            per_trial[members].mean(axis=0)
            if members.any()
            else np.full(per_trial.shape[1], np.nan)
        )
    return curves


def class_timecourses(es: EpochSet) -> dict[TaskLabel, np.ndarray]:
    """Per-class average over trials and oxygenated streams, one value per epoch sample."""
    return _by_class(es, es.data[:, _task_streams(es), :].mean(axis=1))


def class_spectra(es: EpochSet) -> tuple[np.ndarray, dict[TaskLabel, np.ndarray]]:
    """
    Per-class Hann periodogram of the post-onset part of each epoch.

    Powers are averaged over the oxygenated streams and then over trials.
    """
    post = es.times() >= 0.0
    if post.sum() < 2:
        raise InvalidInputError("the epoch window holds fewer than 2 post-onset samples")
    freqs, power = periodogram(es.data[:, _task_streams(es)][:, :, post], es.fs)
    return freqs, _by_class(es, power.mean(axis=1))


class VisualizeHandler(RequestHandler[VisualizeCommand, CommandResult]):
    def handle(self, command: VisualizeCommand) -> CommandResult:
        cfg = command.config
        outputs = check_outputs(
            cfg,
            cfg.output_path(CORRELATION_ORIGINAL_FILE),
            cfg.output_path(CORRELATION_KPCA_FILE),
            cfg.output_path(TIMECOURSE_FILE),
            cfg.output_path(SPECTRUM_FILE),
        )
        es = read_epochs(cfg)
        fm = feature_matrix(cfg, es)
        with stage("correlation", features=fm.n_features):
            original = correlation_matrix(fm.values)
            scores = kpca_scores(cfg, fm.values)
            reduced = correlation_matrix(scores)
            names = [f"kpc{index:02d}" for index in range(1, scores.shape[1] + 1)]
        with stage("timecourse"):
            averages = class_timecourses(es)
            freqs, spectra = class_spectra(es)
        with stage("write"):
            write_correlation_csv(original, fm.feature_names, outputs[0])
            write_correlation_csv(reduced, names, outputs[1])
            write_timecourse_csv(es.times(), averages, outputs[2])
            write_spectrum_csv(freqs, spectra, outputs[3])

        off_diagonal = reduced[~np.eye(len(reduced), dtype=bool)]
        max_kpca_r = float(np.abs(off_diagonal).max()) if off_diagonal.size else 0.0
        return CommandResult(
            outputs=outputs,
            lines=(
                f"visualize: features={fm.n_features} components={scores.shape[1]} "
                f"max_kpca_abs_r={max_kpca_r:.3g} -> {cfg.out}",
            ),
            values={"max_kpca_abs_r": max_kpca_r},
        )
