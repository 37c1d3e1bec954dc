"""Domain layer: value objects, models and exceptions."""

from .exceptions import (
    ConfigurationError,
    ContainerError,
    ConvergenceWarning,
    DataFormatError,
    FnirsError,
    InvalidInputError,
    PipelineError,
    SignalProcessingError,
    TrainingDivergedError,
)
from .models import *  # noqa: F401,F403
from .models import __all__ as _models_all
from .services import RandomStream, derive_seed, make_rng
from .value_objects import FloatArray, ValueObject, array_from_json, array_to_json, frozen_array

__all__ = [
    "FloatArray",
    "ValueObject",
    "array_from_json",
    "array_to_json",
    "frozen_array",
    "RandomStream",
    "make_rng",
    "derive_seed",
    "FnirsError",
    "InvalidInputError",
    "DataFormatError",
    "SignalProcessingError",
    "ConfigurationError",
    "TrainingDivergedError",
    "ContainerError",
    "PipelineError",
    "ConvergenceWarning",
    *_models_all,
]
