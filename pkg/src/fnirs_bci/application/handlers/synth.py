"""Synthetic recording generation."""

from ...infrastructure.io import generate_synthetic, save_events, save_recording
from ...observability import get_logger, stage
from ..commands import CommandResult, SynthCommand
from ..config import EVENTS_FILE, RECORDING_FILE
from ..mediator import RequestHandler
from .common import check_outputs, mbll_params

logger = get_logger(__name__)


class SynthHandler(RequestHandler[SynthCommand, CommandResult]):
    def handle(self, command: SynthCommand) -> CommandResult:
        cfg = command.config
        recording_path, events_path = check_outputs(
            cfg, cfg.output_path(RECORDING_FILE), cfg.output_path(EVENTS_FILE)
        )
        mbll = mbll_params(cfg)
        with stage("synth", seed=cfg.seed):
            rec, ev = generate_synthetic(cfg.synth_config(), mbll)
            save_recording(rec, recording_path)
            save_events(ev, events_path)
        return CommandResult(
            outputs=(recording_path, events_path),
            lines=(
                f"synth: trials={len(ev)} channels={rec.n_channels} samples={rec.n_samples} "
                f"fs={rec.fs:g} -> {recording_path}",
            ),
            values={"n_trials": len(ev), "n_samples": rec.n_samples},
        )
