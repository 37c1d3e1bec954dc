"""
Observability configuration for logging, tracing, and metrics.
"""

from dataclasses import dataclass, field
from typing import Optional


@dataclass
class ObservabilityConfig:
    """Configuration for observability features."""

    # Service identification
    service_name: str = "fnirs-bci"
    service_version: str = "0.1.0"
    environment: str = "local"

    # Enable/disable features
    tracing_enabled: bool = True
    logging_enabled: bool = True
    metrics_enabled: bool = True

    # Logging configuration
    log_level: str = "INFO"
    log_format: str = "text"  # json or text

    # OpenTelemetry Collector endpoint; spans stay in-process when unset
    otlp_endpoint: Optional[str] = None
    otlp_insecure: bool = True

    # Prometheus text file written after each CLI command
    metrics_file: Optional[str] = None

    # Sampling configuration
    trace_sample_rate: float = 1.0  # 1.0 = 100% sampling

    # Additional attributes
    custom_attributes: dict = field(default_factory=dict)

    def __post_init__(self):
        """Validate enumerated settings."""
        self.log_level = self.log_level.upper()
        if self.log_format not in ("json", "text"):
            raise ValueError(f"log_format must be 'json' or 'text', got {self.log_format!r}")
        if not 0.0 <= self.trace_sample_rate <= 1.0:
            raise ValueError("trace_sample_rate must lie in [0, 1]")
