"""Epochs to a feature matrix."""

from ...infrastructure.io import save_features
from ...observability import stage
from ..commands import CommandResult, FeaturesCommand
from ..config import FEATURES_FILE
from ..mediator import RequestHandler
from ..pipeline import feature_matrix
from .common import check_outputs, read_epochs


class FeaturesHandler(RequestHandler[FeaturesCommand, CommandResult]):
    def handle(self, command: FeaturesCommand) -> CommandResult:
        cfg = command.config
        (features_path,) = check_outputs(cfg, cfg.output_path(FEATURES_FILE))
        fm = feature_matrix(cfg, read_epochs(cfg))
        with stage("write", file=str(features_path)):
            save_features(fm, features_path)
        return CommandResult(
            outputs=(features_path,),
            lines=(
                f"features: trials={fm.n_trials} features={fm.n_features} "
                f"set={cfg.feature_set} -> {features_path}",
            ),
            values={"n_features": fm.n_features},
        )
