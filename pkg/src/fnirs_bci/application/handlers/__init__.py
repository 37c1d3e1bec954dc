"""Command handlers."""

from .compare import CompareHandler
from .evaluate import EvaluateHandler
from .features import FeaturesHandler
from .preprocess import PreprocessHandler
from .synth import SynthHandler
from .train import TrainHandler
from .visualize import VisualizeHandler

__all__ = [
    "SynthHandler",
    "PreprocessHandler",
    "FeaturesHandler",
    "TrainHandler",
    "EvaluateHandler",
    "VisualizeHandler",
    "CompareHandler",
]
