"""Wire every command to its handler."""

from .commands import (
    CompareCommand,
    EvaluateCommand,
    FeaturesCommand,
    PreprocessCommand,
    SynthCommand,
    TrainCommand,
    VisualizeCommand,
)
from .handlers import (
    CompareHandler,
    EvaluateHandler,
    FeaturesHandler,
    PreprocessHandler,
    SynthHandler,
    TrainHandler,
    VisualizeHandler,
)
from .mediator import Mediator


def build_mediator() -> Mediator:
    """A mediator with a fresh handler per request for every CLI command."""
    mediator = Mediator()
    mediator.register_handler_factory(SynthCommand, SynthHandler)
    mediator.register_handler_factory(PreprocessCommand, PreprocessHandler)
    mediator.register_handler_factory(FeaturesCommand, FeaturesHandler)
    mediator.register_handler_factory(TrainCommand, TrainHandler)
    mediator.register_handler_factory(EvaluateCommand, EvaluateHandler)
    mediator.register_handler_factory(VisualizeCommand, VisualizeHandler)
    mediator.register_handler_factory(CompareCommand, CompareHandler)
    return mediator
