"""Bi-LSTM against the sLDA and ANN baselines over several synthetic subjects."""

from typing import Any

import numpy as np

from ...classifiers import crossval
from ...features import FeatureSet, temporal_mean_features
from ...infrastructure.io import generate_synthetic, write_comparison_csv
from ...observability import get_logger_with_context, stage
from ..commands import CommandResult, CompareCommand
from ..config import COMPARISON_FILE, ClassifierName, PipelineConfig
from ..mediator import RequestHandler
from ..pipeline import (
    IcaNetworkPredictor,
    NetworkPredictor,
    baseline_fit_fn,
    fit_raw_ica,
    kept_rows,
    make_split,
    preprocess,
)
from .common import check_outputs, mbll_params


def compare_subject(cfg: PipelineConfig, subject: int) -> dict[str, Any]:
    """
    One synthetic subject: Bi-LSTM and ANN test accuracy on the shared split,
    and the temporal-mean sLDA repeated k-fold accuracy on every trial.
    """
    log = get_logger_with_context(__name__, subject=subject, seed=cfg.seed)
    log.info("comparing subject")
    mbll = mbll_params(cfg)
    rec, ev = generate_synthetic(cfg.synth_config(), mbll)
    es = preprocess(cfg, rec, ev, mbll)
    split = make_split(cfg, es.labels)
    test = es.subset(split.test)

    fitted = fit_raw_ica(cfg, es, split)
    predictor = IcaNetworkPredictor(fitted.ica, NetworkPredictor(fitted.spec, fitted.params))
    bilstm_probs = predictor.predict_proba(test)
    bilstm = float(np.mean(np.argmax(bilstm_probs, axis=1) == test.label_indices))

    fm = temporal_mean_features(es)
    with stage("crossval", classifier="slda"):
        slda = crossval(
            baseline_fit_fn(cfg, ClassifierName.SLDA),
            fm.values,
            fm.label_indices,
            cfg.cv_k,
            cfg.cv_repeats,
            cfg.seed,
        ).mean

    rows = kept_rows(split)
    with stage("fit", classifier="ann"):
        ann_fit = baseline_fit_fn(cfg, ClassifierName.ANN)
        ann_model = ann_fit(fm.values[rows], fm.label_indices[rows])
        ann_pred = ann_model.predict(fm.values[split.test])
    ann = float(np.mean(ann_pred == fm.label_indices[split.test]))

    row = {
        "subject": f"S{subject:02d}",
        "seed": cfg.seed,
        "bilstm_accuracy": bilstm,
        "slda_accuracy": slda,
        "ann_accuracy": ann,
    }
    log.info("subject compared", extra={"extra_fields": row})
    return row


class CompareHandler(RequestHandler[CompareCommand, CommandResult]):
    def handle(self, command: CompareCommand) -> CommandResult:
        cfg = command.config.model_copy(update={"feature_set": FeatureSet.TEMPORAL_MEAN})
        (comparison_path,) = check_outputs(cfg, cfg.output_path(COMPARISON_FILE))
        rows = []
        for subject, seed in enumerate(cfg.compare_seeds, 1):
            with stage("subject", subject=subject, seed=seed):
                rows.append(compare_subject(cfg.model_copy(update={"seed": seed}), subject))
        with stage("write"):
            write_comparison_csv(rows, comparison_path)

        means = {
            key: float(np.mean([row[key] for row in rows]))
            for key in ("bilstm_accuracy", "slda_accuracy", "ann_accuracy")
        }
        lines = [
            f"compare: subject={row['subject']} seed={row['seed']} "
            f"bilstm={row['bilstm_accuracy']:.4f} slda={row['slda_accuracy']:.4f} "
            f"ann={row['ann_accuracy']:.4f}"
            for row in rows
        ]
        lines.append(
            f"compare: subject=mean bilstm={means['bilstm_accuracy']:.4f} "
            f"slda={means['slda_accuracy']:.4f} ann={means['ann_accuracy']:.4f}"
        )
        return CommandResult(
            outputs=(comparison_path,), lines=tuple(lines), values={"rows": rows, "means": means}
        )
