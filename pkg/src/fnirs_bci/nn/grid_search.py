"""Hyper-parameter grid search over learning rate, dropout and LSTM width."""

import itertools
from dataclasses import dataclass
from typing import Any, Callable, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..domain import EpochSet, InvalidInputError, RandomStream, TrainingDivergedError, derive_seed
from ..observability import get_logger
from .layers import ModelSpec, default_model_spec
from .model import ParamStore, predict, sequence_steps
from .training import TrainConfig, TrainReport, train, training_inputs

logger = get_logger(__name__)


class GridPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    lr: float
    dropout: float
    units: int


class GridRow(BaseModel):
    """One trained grid cell. ``val_error`` is 1.0 for a diverged run."""

    model_config = ConfigDict(frozen=True)

    point: GridPoint
    seed: int
    val_error: float
    val_loss: float
    stopped_epoch: int
    diverged: bool = False


@dataclass(frozen=True)
class GridSearchResult:
    best: GridPoint
    best_config: TrainConfig
    best_spec: ModelSpec
    table: tuple[GridRow, ...]
    best_params: Optional[ParamStore] = None
    best_report: Optional[TrainReport] = None


def grid_points(
    lrs: Sequence[float], dropouts: Sequence[float], units: Sequence[int]
) -> list[GridPoint]:
    """Cartesian product in (lr, dropout, units) order."""
    if not lrs or not dropouts or not units:
        raise InvalidInputError("every grid axis needs at least one value")
    return [
        GridPoint(lr=lr, dropout=dropout, units=width)
        for lr, dropout, width in itertools.product(lrs, dropouts, units)
    ]


def _selection_key(row: GridRow) -> tuple[bool, float, int, float, float]:
    return (row.diverged, row.val_error, row.point.units, -row.point.dropout, row.point.lr)


def grid_search(
    spec_template: Callable[[GridPoint, TrainConfig], ModelSpec] | None,
    grid: dict[str, Sequence[Any]],
    data: tuple[Any, Any],
    cfg: TrainConfig,
) -> GridSearchResult:
    """
    Train one model per grid point and keep the lowest validation error.

    Every cell trains with its own seed ``derive_seed(cfg.seed, GRID, index)``.
    A diverging cell is recorded with error 1.0 and the search continues. Ties
    go to fewer units, then larger dropout, then smaller learning rate.

    Args:
        spec_template: Builds the network for a point; ``default_model_spec``
            sized from the data when None
        grid: ``{"lr": [...], "dropout": [...], "units": [...]}``
        data: (training data, validation data) as accepted by ``train``
        cfg: Base configuration; grid values override its fields

    Returns:
        GridSearchResult with the full table
    """
    points = grid_points(grid.get("lr", ()), grid.get("dropout", ()), grid.get("units", ()))
    data_train, data_val = data

    rows: list[GridRow] = []
    trained: dict[int, tuple[ModelSpec, TrainConfig, ParamStore, TrainReport]] = {}
    for index, point in enumerate(points):
        seed = derive_seed(cfg.seed, RandomStream.GRID, index)
        cell_cfg = cfg.model_copy(
            update={"lr": point.lr, "dropout": point.dropout, "units": point.units, "seed": seed}
        )
        if spec_template is None:
            spec = default_model_spec(
                _input_width(data_train),
                units=point.units,
                dense_units=cell_cfg.dense_units,
                dropout=point.dropout,
                recurrent_dropout=cell_cfg.recurrent_dropout,
                noise_sigma=cell_cfg.noise_sigma,
                l2=cell_cfg.l2,
                time_stride=cell_cfg.time_stride,
                memory_steps=_sequence_steps(data_train, cell_cfg.time_stride),
            )
        else:
            spec = spec_template(point, cell_cfg)
        try:
            params, report = train(spec, data_train, data_val, cell_cfg)
        except TrainingDivergedError as exc:
            logger.warning(
                "grid cell diverged",
                extra={"extra_fields": {"lr": point.lr, "units": point.units, "layer": exc.layer}},
            )
            rows.append(
                GridRow(
                    point=point,
                    seed=seed,
                    val_error=1.0,
                    val_loss=float("inf"),
                    stopped_epoch=exc.epoch,
                    diverged=True,
                )
            )
            continue
        x_val, y_val = training_inputs(spec, data_val)
        error = float(np.mean(np.argmax(predict(spec, params, x_val), axis=1) != y_val))
        rows.append(
            GridRow(
                point=point,
                seed=seed,
                val_error=error,
                val_loss=report.best.val_loss,
                stopped_epoch=report.stopped_epoch,
            )
        )
        trained[index] = (spec, cell_cfg, params, report)

    best_index = min(range(len(rows)), key=lambda i: _selection_key(rows[i]))
    best_row = rows[best_index]
    logger.info(
        "grid search finished",
        extra={
            "extra_fields": {
                "cells": len(rows),
                "best": best_row.point.model_dump(),
                "val_error": best_row.val_error,
            }
        },
    )
    if best_index in trained:
        spec, cell_cfg, params, report = trained[best_index]
        return GridSearchResult(
            best=best_row.point,
            best_config=cell_cfg,
            best_spec=spec,
            table=tuple(rows),
            best_params=params,
            best_report=report,
        )
    raise TrainingDivergedError("grid", best_row.stopped_epoch, 0)


def _input_width(data: Any) -> int:
    if isinstance(data, EpochSet):
        return data.n_streams
    return int(np.asarray(data[0]).shape[-1])


def _sequence_steps(data: Any, time_stride: int) -> int:
    return sequence_steps(data if isinstance(data, EpochSet) else data[0], time_stride)
