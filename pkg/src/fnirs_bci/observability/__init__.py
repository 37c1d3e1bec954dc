"""
Observability building blocks for the fNIRS pipeline.

This package provides:
- Structured logging (JSON or text) with trace correlation
- OpenTelemetry spans and per-stage timing
- Metrics collection with Prometheus
"""

from .config import ObservabilityConfig
from .logging import get_logger, get_logger_with_context, setup_logging
from .metrics import (
    MetricsCollector,
    get_metrics,
    record_accuracy,
    record_command,
    record_stage,
    record_training_epoch,
    render_metrics,
    setup_metrics,
    write_metrics_file,
)
from .tracing import get_tracer, setup_tracing, stage, trace_operation

__all__ = [
    "ObservabilityConfig",
    "setup_logging",
    "get_logger",
    "get_logger_with_context",
    "setup_tracing",
    "get_tracer",
    "stage",
    "trace_operation",
    "MetricsCollector",
    "setup_metrics",
    "get_metrics",
    "render_metrics",
    "write_metrics_file",
    "record_stage",
    "record_command",
    "record_training_epoch",
    "record_accuracy",
]
