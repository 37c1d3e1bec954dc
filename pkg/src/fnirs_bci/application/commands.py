"""One command per CLI subcommand; each carries the resolved configuration."""

from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from .config import PipelineConfig
from .mediator import Request


class CommandResult(BaseModel):
    """
    Outcome of a command.

    ``lines`` are the machine-readable result lines the CLI prints to stdout.
    """

    model_config = ConfigDict(frozen=True)

    outputs: tuple[Path, ...] = ()
    lines: tuple[str, ...] = ()
    values: dict[str, Any] = Field(default_factory=dict)


class PipelineCommand(Request):
    config: PipelineConfig


class SynthCommand(PipelineCommand):
    """Write a synthetic recording and its events."""


class PreprocessCommand(PipelineCommand):
    """Recording and events to baseline-corrected epochs."""


class FeaturesCommand(PipelineCommand):
    """Epochs to a feature matrix."""


class TrainCommand(PipelineCommand):
    """Fit the configured pipeline and store it in a model container."""


class EvaluateCommand(PipelineCommand):
    """Score a model container on a subset of its data."""


class VisualizeCommand(PipelineCommand):
    """Plot-ready CSV exports."""


class CompareCommand(PipelineCommand):
    """Bi-LSTM against the baselines over several synthetic subjects."""
