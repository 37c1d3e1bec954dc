"""Single-hidden-layer network on flat features, trained with the nn machinery."""

from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from sklearn.model_selection import StratifiedShuffleSplit

from ..domain import RandomStream, derive_seed
from ..nn import ModelSpec, ParamStore, TrainConfig, TrainReport, dense_model_spec, predict, train
from .base import check_training_set


def _default_ann_training() -> TrainConfig:
    return TrainConfig(
        lr=1e-2,
        batch_size=8,
        max_epochs=200,
        early_stop_patience=20,
        plateau_patience=10,
        l2=1e-4,
    )


class AnnConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    hidden: int = Field(default=32, ge=1)
    val_fraction: float = Field(default=0.2, gt=0.0, lt=1.0)
    training: TrainConfig = Field(default_factory=_default_ann_training)
    seed: int = 0


@dataclass(frozen=True)
class AnnModel:
    spec: ModelSpec
    params: ParamStore
    report: TrainReport

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        return predict(self.spec, self.params, np.asarray(X, dtype=np.float64))

    def predict(self, X: np.ndarray) -> np.ndarray:
        return np.argmax(self.predict_proba(X), axis=1)


def ann_baseline_fit(X: np.ndarray, y: np.ndarray, cfg: AnnConfig = AnnConfig()) -> AnnModel:
    """
    Dense(hidden, SELU) -> softmax(3), early-stopped on a stratified holdout.

    ``cfg.val_fraction`` of the rows (stratified, seeded) is held out for
    validation loss; the rest is trained on.
    """
    X, y, _ = check_training_set(X, y)
    holdout = StratifiedShuffleSplit(
        n_splits=1,
        test_size=cfg.val_fraction,
        random_state=derive_seed(cfg.seed, RandomStream.SPLIT) % 2**32,
    )
    fit_rows, val_rows = next(holdout.split(X, y))
    spec = dense_model_spec(X.shape[1], hidden=cfg.hidden, l2=cfg.training.l2)
    params, report = train(
        spec,
        (X[fit_rows], y[fit_rows]),
        (X[val_rows], y[val_rows]),
        cfg.training.model_copy(update={"seed": cfg.seed}),
    )
    return AnnModel(spec=spec, params=params, report=report)
