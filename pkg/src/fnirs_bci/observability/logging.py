"""Structured logging with trace correlation."""

import json
import logging
import sys
from datetime import datetime, timezone
from typing import Any, Dict, Optional

from opentelemetry import trace

from .config import ObservabilityConfig


_config: Optional[ObservabilityConfig] = None
_logger_initialized: bool = False


class JsonFormatter(logging.Formatter):
    """JSON formatter for structured logging (one object per line)."""

    def format(self, record: logging.LogRecord) -> str:
        """Format log record as JSON."""
        # Get current span context for trace correlation
        span_context = trace.get_current_span().get_span_context()

        log_data: Dict[str, Any] = {
            "timestamp": datetime.now(timezone.utc).isoformat().replace("+00:00", "Z"),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "module": record.module,
            "function": record.funcName,
            "line": record.lineno,
        }

        if span_context.is_valid:
            log_data["trace_id"] = format(span_context.trace_id, "032x")
            log_data["span_id"] = format(span_context.span_id, "016x")

        if _config:
            log_data["service"] = _config.service_name
            log_data["environment"] = _config.environment

        if record.exc_info:
            log_data["exception"] = self.formatException(record.exc_info)

        # Add custom fields from extra
        if hasattr(record, "extra_fields"):
            log_data.update(record.extra_fields)

        return json.dumps(log_data, default=str)


class TextFormatter(logging.Formatter):
    """Human-readable text formatter with trace context and extra fields."""

    def format(self, record: logging.LogRecord) -> str:
        """Format log record as text with trace context."""
        span_context = trace.get_current_span().get_span_context()

        base_format = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

        extra_fields = getattr(record, "extra_fields", None)
        if extra_fields:
            pairs = " ".join(f"{key}={value}" for key, value in extra_fields.items())
            base_format = f"{base_format} [{pairs}]"

        if span_context.is_valid:
            trace_id = format(span_context.trace_id, "032x")
            base_format = f"{base_format} [trace_id={trace_id}]"

        formatter = logging.Formatter(base_format)
        return formatter.format(record)


def setup_logging(config: ObservabilityConfig, force: bool = False) -> None:
    """
    Configure structured logging on the root logger.

    Args:
        config: Observability configuration
        force: Reconfigure even if logging was already set up
    """
    global _config, _logger_initialized

    if not config.logging_enabled or (_logger_initialized and not force):
        return

    _config = config

    root_logger = logging.getLogger()
    root_logger.setLevel(config.log_level)
    root_logger.handlers.clear()

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(config.log_level)
    formatter = JsonFormatter() if config.log_format == "json" else TextFormatter()
    console_handler.setFormatter(formatter)
    root_logger.addHandler(console_handler)

    _logger_initialized = True


def get_logger(name: str = __name__) -> logging.Logger:
    """
    Get a logger instance.

    Args:
        name: Logger name (usually __name__ of the module)

    Returns:
        Logger instance
    """
    return logging.getLogger(name)


class LoggerAdapter(logging.LoggerAdapter):
    """Logger adapter that adds extra fields to all log records."""

    def process(self, msg: str, kwargs: Dict[str, Any]) -> tuple:
        """Process log message and add extra fields."""
        extra = kwargs.setdefault("extra", {})
        fields = dict(self.extra or {})
        fields.update(extra.get("extra_fields", {}))
        extra["extra_fields"] = fields
        return msg, kwargs


def get_logger_with_context(name: str = __name__, **context: Any) -> LoggerAdapter:
    """
    Get a logger with additional context fields.

    Args:
        name: Logger name
        **context: Additional context fields to include in all log records

    Returns:
        LoggerAdapter instance with context

    Example:
        logger = get_logger_with_context(__name__, pipeline="raw_ica", seed=7)
        logger.info("Training started")
    """
    return LoggerAdapter(get_logger(name), context)
