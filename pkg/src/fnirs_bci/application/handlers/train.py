"""Fit a pipeline and persist it."""

from pathlib import Path
from typing import Any, Optional

from ...classifiers import AnnModel, ScaledClassifier
from ...infrastructure.io import write_crossval_csv, write_grid_table, write_train_report
from ...infrastructure.persistence import save_container
from ...nn import TrainReport
from ...observability import get_logger, stage
from ..commands import CommandResult, TrainCommand
from ..config import (
    CROSSVAL_FILE,
    ClassifierName,
    GRID_FILE,
    MODEL_FILE,
    TRAIN_REPORT_FILE,
    Pipeline,
    PipelineConfig,
)
from ..mediator import RequestHandler
from ..pipeline import (
    KpcaClassifier,
    feature_container,
    fit_features,
    fit_raw_ica,
    make_split,
    raw_ica_container,
)
from .common import check_outputs, read_epochs, read_features

logger = get_logger(__name__)


def _network_report(model: Any) -> Optional[TrainReport]:
    """Training history of a network baseline nested inside scaling/KPCA wrappers."""
    while isinstance(model, (ScaledClassifier, KpcaClassifier)):
        model = model.model
    return model.report if isinstance(model, AnnModel) else None


def _report_rows(report: TrainReport) -> list[dict[str, float]]:
    return [record.model_dump() for record in report.epochs]


class TrainHandler(RequestHandler[TrainCommand, CommandResult]):
    def handle(self, command: TrainCommand) -> CommandResult:
        cfg = command.config
        if cfg.pipeline is Pipeline.RAW_ICA:
            return self._raw_ica(cfg)
        return self._features(cfg)

    def _raw_ica(self, cfg: PipelineConfig) -> CommandResult:
        wanted = [cfg.output_path(MODEL_FILE), cfg.output_path(TRAIN_REPORT_FILE)]
        if cfg.has_grid:
            wanted.append(cfg.output_path(GRID_FILE))
        outputs = check_outputs(cfg, *wanted)

        es = read_epochs(cfg)
        split = make_split(cfg, es.labels)
        fitted = fit_raw_ica(cfg, es, split)
        with stage("write"):
            checksum = save_container(raw_ica_container(cfg, fitted, split), outputs[0], cfg.force)
            write_train_report(_report_rows(fitted.report), outputs[1])
            if cfg.has_grid:
                write_grid_table(
                    [
                        {**row.point.model_dump(), **row.model_dump(exclude={"point"})}
                        for row in fitted.grid
                    ],
                    outputs[2],
                )
        best = fitted.report.best
        return CommandResult(
            outputs=outputs,
            lines=(
                f"train: pipeline=raw_ica best_epoch={fitted.report.best_epoch} "
                f"stopped_epoch={fitted.report.stopped_epoch} val_loss={best.val_loss:.6g} "
                f"val_accuracy={best.val_accuracy:.6g} checksum={checksum}",
            ),
            values={"checksum": checksum, "params_checksum": fitted.report.checksum},
        )

    def _features(self, cfg: PipelineConfig) -> CommandResult:
        model_path, report_path, crossval_path = (
            cfg.output_path(MODEL_FILE),
            cfg.output_path(TRAIN_REPORT_FILE),
            cfg.output_path(CROSSVAL_FILE),
        )
        wanted: list[Path] = [model_path, crossval_path]
        if cfg.classifier is ClassifierName.ANN:
            wanted = [model_path, report_path]
        check_outputs(cfg, *wanted)

        fm = read_features(cfg)
        split = make_split(cfg, fm.labels)
        fitted = fit_features(cfg, fm, split, reduce=cfg.pipeline is Pipeline.FEATURES_KPCA)
        lines = []
        with stage("write"):
            checksum = save_container(feature_container(cfg, fitted, split), model_path, cfg.force)
            report = _network_report(fitted.model)
            if report is not None:
                write_train_report(_report_rows(report), report_path)
            if fitted.crossval:
                write_crossval_csv(
                    {
                        name: (result.mean, result.std, len(result.fold_accuracies))
                        for name, result in fitted.crossval.items()
                    },
                    crossval_path,
                )
                lines.extend(
                    f"crossval: problem={name} mean={result.mean:.6g} std={result.std:.6g}"
                    for name, result in fitted.crossval.items()
                )
        lines.insert(
            0,
            f"train: pipeline={cfg.pipeline} classifier={cfg.classifier} "
            f"features={len(fitted.feature_names)} checksum={checksum}",
        )
        return CommandResult(
            outputs=tuple(wanted),
            lines=tuple(lines),
            values={
                "checksum": checksum,
                "crossval": {name: r.mean for name, r in fitted.crossval.items()},
            },
        )
