"""Score a model container."""

import numpy as np

from ...domain import CLASS_ORDER, InvalidInputError
from ...evaluation import eval_report
from ...infrastructure.io import roc_filename, write_metrics_json, write_roc_csv
from ...infrastructure.persistence import load_container
from ...observability import get_logger, record_accuracy, stage
from ..commands import CommandResult, EvaluateCommand
from ..config import METRICS_FILE, MODEL_FILE, Pipeline
from ..mediator import RequestHandler
from ..pipeline import restore_predictor, split_from_dict, subset_rows
from .common import check_outputs, read_epochs, read_features

logger = get_logger(__name__)


def _check_trial_count(n_trials: int, rows: np.ndarray, n_split: int) -> None:
    if n_trials != n_split:
        raise InvalidInputError(
            f"data holds {n_trials} trials but the model was trained on a split of {n_split}"
        )
    if len(rows) == 0:
        raise InvalidInputError("the selected subset holds no trials")


class EvaluateHandler(RequestHandler[EvaluateCommand, CommandResult]):
    def handle(self, command: EvaluateCommand) -> CommandResult:
        cfg = command.config
        metrics_path = cfg.output_path(METRICS_FILE)
        roc_paths = [cfg.output_path(roc_filename(label)) for label in CLASS_ORDER]
        outputs = check_outputs(cfg, metrics_path, *roc_paths)

        model_path = cfg.input_path("model", MODEL_FILE)
        with stage("load", file=str(model_path)):
            container = load_container(model_path)
            predictor = restore_predictor(container)
            split = split_from_dict(container.extras.get("split", {}))
        n_split = sum(len(part) for part in split)
        rows = subset_rows(split, cfg.subset)

        pipeline = Pipeline(container.pipeline)
        if pipeline is Pipeline.RAW_ICA:
            es = read_epochs(cfg)
            _check_trial_count(es.n_trials, rows, n_split)
            data, labels = es.subset(rows), es.label_indices[rows]
        else:
            fm = read_features(cfg)
            _check_trial_count(fm.n_trials, rows, n_split)
            expected = tuple(container.extras.get("feature_names", ()))
            if fm.feature_names != expected:
                raise InvalidInputError(
                    f"feature columns ({fm.n_features}) differ from those the model was "
                    f"trained on ({len(expected)})"
                )
            data, labels = fm.values[rows], fm.label_indices[rows]

        with stage("evaluate", subset=str(cfg.subset), trials=len(rows)):
            probs = predictor.predict_proba(data)
            report = eval_report(
                probs, labels, seed=int(container.config.get("seed", 0)), split_sizes=split.sizes()
            )
        with stage("write"):
            write_metrics_json(report, metrics_path)
            for label, path in zip(CLASS_ORDER, roc_paths):
                write_roc_csv(report.roc[label], path)
        record_accuracy(pipeline.value, report.accuracy)
        logger.info(
            "evaluation finished",
            extra={
                "extra_fields": {
                    "pipeline": pipeline.value,
                    "subset": str(cfg.subset),
                    "accuracy": report.accuracy,
                    "auc": report.auc,
                }
            },
        )
        return CommandResult(
            outputs=outputs,
            lines=(f"accuracy={report.accuracy!r}",),
            values={"accuracy": report.accuracy, "auc": report.auc},
        )
