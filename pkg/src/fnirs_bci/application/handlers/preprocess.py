"""Recording to epochs."""

from ...infrastructure.io import load_events, load_recording, save_epochs
from ...observability import stage
from ..commands import CommandResult, PreprocessCommand
from ..config import CHANNELS_FILE, EPOCHS_FILE, EVENTS_FILE, RECORDING_FILE
from ..mediator import RequestHandler
from ..pipeline import preprocess
from .common import check_outputs, mbll_params


class PreprocessHandler(RequestHandler[PreprocessCommand, CommandResult]):
    def handle(self, command: PreprocessCommand) -> CommandResult:
        cfg = command.config
        (epochs_path,) = check_outputs(cfg, cfg.output_path(EPOCHS_FILE))
        recording_path = cfg.input_path("recording", RECORDING_FILE)
        events_path = cfg.input_path("events", EVENTS_FILE)
        mbll = mbll_params(cfg)
        with stage("load", file=str(recording_path)):
            rec = load_recording(
                recording_path, cfg.fs_override, cfg.input_path("channels", CHANNELS_FILE)
            )
            ev = load_events(events_path)
        es = preprocess(cfg, rec, ev, mbll)
        with stage("write", file=str(epochs_path)):
            save_epochs(es, epochs_path)
        return CommandResult(
            outputs=(epochs_path,),
            lines=(
                f"preprocess: epochs={es.n_trials} streams={es.n_streams} "
                f"samples={es.n_samples} -> {epochs_path}",
            ),
            values={"n_epochs": es.n_trials, "n_samples": es.n_samples},
        )
