"""
Mini-batch training with Nadam, early stopping and LR reduction on plateau.
"""

import math
from typing import Any, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..domain import (
    EpochSet,
    FeatureMatrix,
    InvalidInputError,
    RandomStream,
    TrainingDivergedError,
    make_rng,
)
from ..observability import get_logger, record_training_epoch, trace_operation
from .layers import ModelSpec
from .loss import cross_entropy, one_hot
from .model import (
    ParamStore,
    apply_batch_stats,
    build_params,
    forward_backward,
    network_input,
    predict,
)
from .optim import nadam_step

logger = get_logger(__name__)


class TrainConfig(BaseModel):
    """Optimizer, schedule and regularization settings for one training run."""

    model_config = ConfigDict(frozen=True)

    lr: float = Field(default=1e-3, gt=0.0)
    batch_size: int = Field(default=4, ge=1)
    max_epochs: int = Field(default=100, ge=1)
    early_stop_patience: int = Field(default=10, ge=0)
    min_delta: float = Field(default=1e-4, ge=0.0)
    plateau_factor: float = Field(default=0.5, gt=0.0, lt=1.0)
    plateau_patience: int = Field(default=5, ge=0)
    min_lr: float = Field(default=1e-5, gt=0.0)
    noise_sigma: float = Field(default=0.1, ge=0.0)
    dropout: float = Field(default=0.1, ge=0.0, lt=1.0)
    recurrent_dropout: float = Field(default=0.1, ge=0.0, lt=1.0)
    l2: float = Field(default=0.1, ge=0.0)
    units: int = Field(default=32, ge=1)
    dense_units: int = Field(default=16, ge=1)
    time_stride: int = Field(default=3, ge=1)
    beta1: float = Field(default=0.9, ge=0.0, lt=1.0)
    beta2: float = Field(default=0.999, ge=0.0, lt=1.0)
    eps: float = Field(default=1e-8, gt=0.0)
    seed: int = 0


class EpochRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    epoch: int
    train_loss: float
    train_accuracy: float
    val_loss: float
    val_accuracy: float
    lr: float


class TrainReport(BaseModel):
    """Per-epoch history of a run plus the checksum of the returned parameters."""

    model_config = ConfigDict(frozen=True)

    epochs: tuple[EpochRecord, ...]
    stopped_epoch: int
    best_epoch: int
    checksum: str

    @property
    def lr_trace(self) -> list[float]:
        return [record.lr for record in self.epochs]

    @property
    def best(self) -> EpochRecord:
        return self.epochs[self.best_epoch - 1]


def mini_batches(n: int, batch_size: int, rng: np.random.Generator) -> list[np.ndarray]:
    """
    Shuffled index batches of ``batch_size``.

    A trailing batch of one is merged into the previous batch.
    """
    order = rng.permutation(n)
    batches = [order[start : start + batch_size] for start in range(0, n, batch_size)]
    if len(batches) > 1 and len(batches[-1]) == 1:
        batches[-2] = np.concatenate([batches[-2], batches[-1]])
        batches.pop()
    return batches


def training_inputs(spec: ModelSpec, data: Any) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(data, EpochSet):
        return network_input(spec, data), data.label_indices
    if isinstance(data, FeatureMatrix):
        return network_input(spec, data.values), data.label_indices
    x, labels = data
    return network_input(spec, x), np.asarray(labels, dtype=np.int64)


def evaluate_loss(
    spec: ModelSpec, store: ParamStore, x: np.ndarray, labels: np.ndarray
) -> tuple[float, float]:
    """Inference-mode (cross-entropy, accuracy) on a labelled set; no L2 term."""
    probs = predict(spec, store, x)
    loss = cross_entropy(probs, one_hot(labels, probs.shape[1]))
    return loss, float(np.mean(np.argmax(probs, axis=1) == labels))


@trace_operation("nn.train")
def train(
    spec: ModelSpec,
    es_train: Any,
    es_val: Any,
    cfg: TrainConfig,
    initial: Optional[ParamStore] = None,
) -> tuple[ParamStore, TrainReport]:
    """
    Train ``spec`` and return the best-epoch parameters.

    Each epoch shuffles the training trials into mini-batches, takes one
    Nadam step per batch and scores the validation set in inference mode.
    Training loss is the full objective (cross-entropy plus L2); validation
    loss is the cross-entropy alone. Training stops once validation loss has
    not improved by more than ``min_delta`` for ``early_stop_patience``
    epochs; the learning rate is multiplied by ``plateau_factor`` (floored at
    ``min_lr``) after ``plateau_patience`` epochs without improvement.

    Args:
        spec: Network description
        es_train: Training data: ``EpochSet``, ``FeatureMatrix`` or ``(x, labels)``
        es_val: Validation data of the same kind
        cfg: Training configuration
        initial: Starting parameters; built from ``cfg.seed`` when omitted

    Returns:
        (ParamStore, TrainReport)

    Raises:
        TrainingDivergedError: A layer output, the loss or a gradient became non-finite
    """
    x_train, y_train = training_inputs(spec, es_train)
    x_val, y_val = training_inputs(spec, es_val)
    if x_train.shape[0] < 2:
        raise InvalidInputError("training needs at least 2 trials")
    if x_val.shape[0] < 1:
        raise InvalidInputError("training needs at least 1 validation trial")

    store = initial.copy() if initial is not None else build_params(spec, cfg.seed)
    shuffle_rng = make_rng(cfg.seed, RandomStream.SHUFFLE)
    dropout_rng = make_rng(cfg.seed, RandomStream.DROPOUT)

    lr = cfg.lr
    history: list[EpochRecord] = []
    best_loss = math.inf
    best_store = store.copy()
    best_epoch = 1
    wait = 0
    plateau_best = math.inf
    plateau_wait = 0

    for epoch in range(1, cfg.max_epochs + 1):
        loss_sum = 0.0
        correct = 0
        batches = mini_batches(x_train.shape[0], cfg.batch_size, shuffle_rng)
        for batch_index, idx in enumerate(batches, 1):
            try:
                result = forward_backward(
                    spec, store, x_train[idx], y_train[idx], "train", dropout_rng
                )
            except TrainingDivergedError as exc:
                raise TrainingDivergedError(exc.layer, epoch, batch_index) from exc
            bad = next(
                (name for name, g in result.grads.items() if not np.all(np.isfinite(g))), None
            )
            if bad is not None:
                raise TrainingDivergedError(bad.split("/", 1)[0], epoch, batch_index)
            store.params, store.optimizer = nadam_step(
                store.params, result.grads, store.optimizer, lr, cfg.beta1, cfg.beta2, cfg.eps
            )
            bad = store.first_nonfinite()
            if bad is not None:
                raise TrainingDivergedError(bad.split("/", 1)[0], epoch, batch_index)
            apply_batch_stats(spec, store, result.batch_stats)
            loss_sum += result.loss * len(idx)
            correct += int(np.sum(np.argmax(result.probs, axis=1) == y_train[idx]))

        try:
            val_loss, val_accuracy = evaluate_loss(spec, store, x_val, y_val)
        except TrainingDivergedError as exc:
            raise TrainingDivergedError(exc.layer, epoch, 0) from exc
        if not math.isfinite(val_loss):
            raise TrainingDivergedError("loss", epoch, 0)

        record = EpochRecord(
            epoch=epoch,
            train_loss=loss_sum / x_train.shape[0],
            train_accuracy=correct / x_train.shape[0],
            val_loss=val_loss,
            val_accuracy=val_accuracy,
            lr=lr,
        )
        history.append(record)
        record_training_epoch()
        logger.debug(
            "epoch finished",
            extra={"extra_fields": record.model_dump()},
        )

        if val_loss < best_loss - cfg.min_delta:
            best_loss, best_epoch, wait = val_loss, epoch, 0
            best_store = store.copy()
        else:
            wait += 1
            if wait >= cfg.early_stop_patience:
                break

        if val_loss < plateau_best - cfg.min_delta:
            plateau_best, plateau_wait = val_loss, 0
        else:
            plateau_wait += 1
            if plateau_wait >= cfg.plateau_patience:
                reduced = max(lr * cfg.plateau_factor, cfg.min_lr)
                if reduced < lr:
                    logger.info(
                        "reducing learning rate",
                        extra={"extra_fields": {"epoch": epoch, "lr": reduced}},
                    )
                    lr = reduced
                plateau_wait = 0

    report = TrainReport(
        epochs=tuple(history),
        stopped_epoch=history[-1].epoch,
        best_epoch=best_epoch,
        checksum=best_store.checksum(),
    )
    logger.info(
        "training finished",
        extra={
            "extra_fields": {
                "stopped_epoch": report.stopped_epoch,
                "best_epoch": best_epoch,
                "best_val_loss": report.best.val_loss,
                "checksum": report.checksum,
            }
        },
    )
    return best_store, report
