"""
Command-line entry point: ``fnirs-bci <command> [options]``.

Every command is resolved into a ``PipelineConfig`` (defaults < environment <
config file < flags) and sent through the mediator. Result lines go to
stdout; a failure prints one ``error: <stage>: <message>`` line to stderr.
"""

import argparse
import sys
from typing import Any, NoReturn, Optional, Sequence

from . import __version__
from .application import (
    ClassifierName,
    CompareCommand,
    EvaluateCommand,
    FeaturesCommand,
    Pipeline,
    PipelineConfig,
    PreprocessCommand,
    Subset,
    SynthCommand,
    TrainCommand,
    VisualizeCommand,
    build_mediator,
    load_pipeline_config,
)
from .domain import FnirsError
from .features import FeatureSet
from .observability import (
    get_logger,
    setup_logging,
    setup_metrics,
    setup_tracing,
    write_metrics_file,
)

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2

COMMANDS = {
    "synth": SynthCommand,
    "preprocess": PreprocessCommand,
    "features": FeaturesCommand,
    "train": TrainCommand,
    "evaluate": EvaluateCommand,
    "visualize": VisualizeCommand,
    "compare": CompareCommand,
}

# Parser destinations that are not PipelineConfig fields.
_NON_CONFIG_DESTS = frozenset({"command", "config"})


class UsageError(Exception):
    pass


class CliParser(argparse.ArgumentParser):
    """Argument parser whose usage errors surface as ``UsageError``."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(message)


def _choices(enum_type: Any) -> list[str]:
    return [member.value for member in enum_type]


def _common_options() -> argparse.ArgumentParser:
    common = CliParser(add_help=False, argument_default=argparse.SUPPRESS)
    group = common.add_argument_group("global options")
    group.add_argument("--config", help="key=value config file (default: $FNIRS_CONFIG)")
    group.add_argument("--seed", type=int, help="master seed")
    group.add_argument("--out", help="output directory (default: out)")
    group.add_argument("--force", action="store_true", help="overwrite existing outputs")
    group.add_argument("--metrics-file", dest="metrics_file", help="write Prometheus metrics here")
    group.add_argument("--log-level", dest="log_level", help="DEBUG, INFO, WARNING or ERROR")
    group.add_argument("--log-format", dest="log_format", choices=["text", "json"])
    return common


def build_parser() -> CliParser:
    common = _common_options()
    parser = CliParser(
        prog="fnirs-bci",
        description="fNIRS mental arithmetic / motor imagery / idle classification",
        parents=[common],
        argument_default=argparse.SUPPRESS,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", metavar="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return commands.add_parser(
            name, help=help_text, parents=[common], argument_default=argparse.SUPPRESS
        )

    synth = add("synth", "write a synthetic recording and its events")
    synth.add_argument("--n-trials-per-class", dest="n_trials_per_class", type=int)
    synth.add_argument("--n-channels", dest="n_channels", type=int)
    synth.add_argument("--fs", dest="synth_fs", type=float, help="sampling rate in Hz")
    synth.add_argument("--mbll-constants", dest="mbll_constants")

    preprocess = add("preprocess", "convert, filter and epoch a recording")
    preprocess.add_argument("--recording")
    preprocess.add_argument("--events")
    preprocess.add_argument("--channels", help="channel sidecar CSV")
    preprocess.add_argument("--fs", dest="fs_override", type=float, help="override inferred fs")
    preprocess.add_argument("--mbll-constants", dest="mbll_constants")
    preprocess.add_argument(
        "--per-channel-distance", dest="per_channel_distance", action="store_true"
    )

    features = add("features", "assemble a feature matrix from epochs")
    features.add_argument("--epochs")
    features.add_argument("--feature-set", dest="feature_set", choices=_choices(FeatureSet))
    features.add_argument("--window-length", dest="window_length_s", type=float)
    features.add_argument("--window-overlap", dest="window_overlap", type=float)

    train = add("train", "fit a pipeline and store it in a model container")
    train.add_argument("--pipeline", choices=_choices(Pipeline))
    train.add_argument("--classifier", choices=_choices(ClassifierName))
    train.add_argument("--epochs")
    train.add_argument("--features")
    train.add_argument("--feature-set", dest="feature_set", choices=_choices(FeatureSet))
    train.add_argument("--n-components", dest="n_components", type=int)
    train.add_argument("--kernel", choices=["rbf", "linear"])
    train.add_argument("--lr", type=float)
    train.add_argument("--batch-size", dest="batch_size", type=int)
    train.add_argument("--max-epochs", dest="max_epochs", type=int)
    train.add_argument("--units", type=int)
    train.add_argument("--dropout", type=float)
    train.add_argument("--time-stride", dest="time_stride", type=int)
    train.add_argument("--grid-lr", dest="grid_lr", help="comma-separated learning rates")
    train.add_argument("--grid-dropout", dest="grid_dropout", help="comma-separated rates")
    train.add_argument("--grid-units", dest="grid_units", help="comma-separated LSTM widths")
    train.add_argument("--cv-k", dest="cv_k", type=int)
    train.add_argument("--cv-repeats", dest="cv_repeats", type=int)

    evaluate = add("evaluate", "score a model container")
    evaluate.add_argument("--model")
    evaluate.add_argument("--epochs")
    evaluate.add_argument("--features")
    evaluate.add_argument("--subset", choices=_choices(Subset))

    visualize = add("visualize", "write correlation, time-course and spectrum CSVs")
    visualize.add_argument("--epochs")
    visualize.add_argument("--feature-set", dest="feature_set", choices=_choices(FeatureSet))
    visualize.add_argument("--n-components", dest="n_components", type=int)
    visualize.add_argument("--kernel", choices=["rbf", "linear"])

    compare = add("compare", "Bi-LSTM against sLDA and ANN over synthetic subjects")
    compare.add_argument("--seeds", dest="compare_seeds", help="comma-separated subject seeds")
    compare.add_argument("--n-trials-per-class", dest="n_trials_per_class", type=int)
    compare.add_argument("--max-epochs", dest="max_epochs", type=int)
    compare.add_argument("--cv-k", dest="cv_k", type=int)
    compare.add_argument("--cv-repeats", dest="cv_repeats", type=int)
    return parser


def _setup_observability(cfg: PipelineConfig) -> None:
    observability = cfg.observability_config()
    setup_logging(observability, force=True)
    setup_tracing(observability)
    setup_metrics(observability)


def _fail(exc: FnirsError, stage: str) -> int:
    if exc.stage is None:
        exc.stage = stage
    print(exc.cli_line(), file=sys.stderr)
    return EXIT_ERROR


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command; returns the process exit code."""
    try:
        args = vars(build_parser().parse_args(argv))
    except UsageError as exc:
        print(f"error: cli: {exc}", file=sys.stderr)
        return EXIT_USAGE

    command = args["command"]
    overrides = {key: value for key, value in args.items() if key not in _NON_CONFIG_DESTS}
    try:
        cfg = load_pipeline_config(args.get("config"), overrides)
        _setup_observability(cfg)
    except FnirsError as exc:
        return _fail(exc, "config")
    except ValueError as exc:
        print(f"error: config: {exc}", file=sys.stderr)
        return EXIT_ERROR

    try:
        result = build_mediator().send(COMMANDS[command](config=cfg))
    except FnirsError as exc:
        logger.debug("command failed", exc_info=True)
        return _fail(exc, command)
    except Exception as exc:  # noqa: BLE001
        logger.debug("command crashed", exc_info=True)
        print(f"error: {command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    finally:
        if cfg.metrics_file is not None:
            write_metrics_file(str(cfg.metrics_file))

    for line in result.lines:
        print(line)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
