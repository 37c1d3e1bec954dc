"""Configuration, commands and handlers behind the CLI."""

from .bootstrap import build_mediator
from .commands import (
    CommandResult,
    CompareCommand,
    EvaluateCommand,
    FeaturesCommand,
    PipelineCommand,
    PreprocessCommand,
    SynthCommand,
    TrainCommand,
    VisualizeCommand,
)
from .config import (
    CONFIG_ENV_VAR,
    ClassifierName,
    Pipeline,
    PipelineConfig,
    Subset,
    load_pipeline_config,
    read_config_file,
)
from .mediator import HandlerRegistry, Mediator

__all__ = [
    "build_mediator",
    "CommandResult",
    "PipelineCommand",
    "SynthCommand",
    "PreprocessCommand",
    "FeaturesCommand",
    "TrainCommand",
    "EvaluateCommand",
    "VisualizeCommand",
    "CompareCommand",
    "CONFIG_ENV_VAR",
    "ClassifierName",
    "Pipeline",
    "PipelineConfig",
    "Subset",
    "load_pipeline_config",
    "read_config_file",
    "HandlerRegistry",
    "Mediator",
]
