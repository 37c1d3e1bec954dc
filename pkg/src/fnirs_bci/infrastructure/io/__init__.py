"""File formats, synthetic data and exports."""

from .atomic import atomic_open, atomic_write_text, ensure_writable
from .csv_codec import FLOAT_FORMAT, read_table, write_table
from .epochs_csv import EPOCHS_FORMAT_VERSION, load_epochs, save_epochs
from .exports import (
    metrics_json_text,
    roc_filename,
    write_comparison_csv,
    write_correlation_csv,
    write_crossval_csv,
    write_grid_table,
    write_metrics_json,
    write_roc_csv,
    write_spectrum_csv,
    write_timecourse_csv,
    write_train_report,
)
from .features_csv import load_features, save_features
from .recording_csv import (
    infer_fs,
    load_channels,
    load_events,
    load_recording,
    resolve_channels,
    save_channels,
    save_events,
    save_recording,
)
from .synthetic import SynthConfig, generate_synthetic

__all__ = [
    "atomic_open",
    "atomic_write_text",
    "ensure_writable",
    "FLOAT_FORMAT",
    "read_table",
    "write_table",
    "infer_fs",
    "load_recording",
    "save_recording",
    "load_channels",
    "save_channels",
    "resolve_channels",
    "load_events",
    "save_events",
    "EPOCHS_FORMAT_VERSION",
    "load_epochs",
    "save_epochs",
    "load_features",
    "save_features",
    "SynthConfig",
    "generate_synthetic",
    "metrics_json_text",
    "write_metrics_json",
    "roc_filename",
    "write_roc_csv",
    "write_train_report",
    "write_grid_table",
    "write_correlation_csv",
    "write_timecourse_csv",
    "write_spectrum_csv",
    "write_comparison_csv",
    "write_crossval_csv",
]
