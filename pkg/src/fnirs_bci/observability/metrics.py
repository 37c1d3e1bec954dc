"""
Metrics collection with Prometheus.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from prometheus_client import (
    CollectorRegistry,
    Counter,
    Gauge,
    Histogram,
    Info,
    generate_latest,
    write_to_textfile,
)

from .config import ObservabilityConfig


_metrics: Dict[str, Any] = {}


@dataclass
class MetricsCollector:
    """Container for pipeline metrics."""

    registry: CollectorRegistry = field(default_factory=CollectorRegistry)

    # Stage metrics
    stage_duration_seconds: Optional[Histogram] = None
    stage_runs_total: Optional[Counter] = None

    # Command metrics
    command_requests_total: Optional[Counter] = None

    # Model metrics
    training_epochs_total: Optional[Counter] = None
    last_accuracy: Optional[Gauge] = None

    app_info: Optional[Info] = None

    def __post_init__(self):
        """Initialize all metrics."""
        self.stage_duration_seconds = Histogram(
            "fnirs_stage_duration_seconds",
            "Pipeline stage duration in seconds",
            ["stage"],
            buckets=(0.01, 0.05, 0.1, 0.5, 1.0, 5.0, 15.0, 60.0, 300.0, 900.0),
            registry=self.registry,
        )

        self.stage_runs_total = Counter(
            "fnirs_stage_runs_total",
            "Total number of pipeline stage executions",
            ["stage", "status"],
            registry=self.registry,
        )

        self.command_requests_total = Counter(
            "fnirs_command_requests_total",
            "Total number of dispatched commands",
            ["command", "status"],
            registry=self.registry,
        )

        self.training_epochs_total = Counter(
            "fnirs_training_epochs_total",
            "Total number of completed training epochs",
            registry=self.registry,
        )

        self.last_accuracy = Gauge(
            "fnirs_last_accuracy",
            "Accuracy of the most recent evaluation",
            ["pipeline"],
            registry=self.registry,
        )

        self.app_info = Info(
            "fnirs_app",
            "Application information",
            registry=self.registry,
        )


def setup_metrics(config: ObservabilityConfig) -> Optional[MetricsCollector]:
    """
    Initialize Prometheus metrics.

    Args:
        config: Observability configuration

    Returns:
        MetricsCollector instance, or None when metrics are disabled
    """
    if not config.metrics_enabled:
        _metrics.pop("collector", None)
        return None

    collector = MetricsCollector()
    collector.app_info.info({
        "service_name": config.service_name,
        "version": config.service_version,
        "environment": config.environment,
    })

    _metrics["collector"] = collector
    _metrics["config"] = config
    return collector


def get_metrics() -> Optional[MetricsCollector]:
    """
    Get the metrics collector instance.

    Returns:
        MetricsCollector instance or None if metrics not enabled
    """
    return _metrics.get("collector")


def render_metrics() -> bytes:
    """Render the registry in Prometheus text exposition format."""
    collector = get_metrics()
    if collector is None:
        return b""
    return generate_latest(collector.registry)


def write_metrics_file(path: str) -> None:
    """Write the registry to a Prometheus text file (atomic rename)."""
    collector = get_metrics()
    if collector is not None:
        write_to_textfile(path, collector.registry)


def record_stage(stage: str, duration: float, success: bool) -> None:
    """
    Record metrics for one pipeline stage execution.

    Args:
        stage: Stage name
        duration: Stage duration in seconds
        success: Whether the stage completed
    """
    collector = get_metrics()
    if collector is None:
        return

    collector.stage_runs_total.labels(stage=stage, status="success" if success else "error").inc()
    collector.stage_duration_seconds.labels(stage=stage).observe(duration)


def record_command(command: str, success: bool) -> None:
    """Record one command dispatch."""
    collector = get_metrics()
    if collector is None:
        return
    collector.command_requests_total.labels(
        command=command, status="success" if success else "error"
    ).inc()


def record_training_epoch() -> None:
    """Count a completed training epoch."""
    collector = get_metrics()
    if collector is not None:
        collector.training_epochs_total.inc()


def record_accuracy(pipeline: str, accuracy: float) -> None:
    """Publish the latest evaluation accuracy."""
    collector = get_metrics()
    if collector is not None:
        collector.last_accuracy.labels(pipeline=pipeline).set(accuracy)
