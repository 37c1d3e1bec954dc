"""
Tracing with OpenTelemetry and per-stage timing.
"""

import functools
import time
from contextlib import contextmanager
from typing import Any, Callable, Iterator, Optional

from opentelemetry import trace
from opentelemetry.sdk.resources import SERVICE_NAME, SERVICE_VERSION, Resource
from opentelemetry.sdk.trace import TracerProvider
from opentelemetry.sdk.trace.export import BatchSpanProcessor
from opentelemetry.sdk.trace.sampling import TraceIdRatioBased

from ..domain.exceptions import FnirsError, PipelineError
from .config import ObservabilityConfig
from .logging import get_logger
from .metrics import record_stage


_tracer_provider: Optional[TracerProvider] = None
_config: Optional[ObservabilityConfig] = None

logger = get_logger(__name__)


def setup_tracing(config: ObservabilityConfig) -> None:
    """
    Initialize OpenTelemetry tracing.

    Spans are always created; they are exported only when an OTLP endpoint is
    configured and the optional exporter package is installed.

    Args:
        config: Observability configuration
    """
    global _tracer_provider, _config

    if not config.tracing_enabled or _tracer_provider is not None:
        return

    _config = config

    resource = Resource.create({
        SERVICE_NAME: config.service_name,
        SERVICE_VERSION: config.service_version,
        "environment": config.environment,
        **config.custom_attributes,
    })
    _tracer_provider = TracerProvider(
        resource=resource, sampler=TraceIdRatioBased(config.trace_sample_rate)
    )

    if config.otlp_endpoint:
        try:
            from opentelemetry.exporter.otlp.proto.grpc.trace_exporter import OTLPSpanExporter
        except ImportError:
            logger.warning("OTLP endpoint configured but the exporter package is not installed")
        else:
            _tracer_provider.add_span_processor(
                BatchSpanProcessor(
                    OTLPSpanExporter(endpoint=config.otlp_endpoint, insecure=config.otlp_insecure)
                )
            )

    trace.set_tracer_provider(_tracer_provider)


def get_tracer(name: str = __name__) -> trace.Tracer:
    """
    Get a tracer instance.

    Args:
        name: Tracer name (usually __name__ of the module)

    Returns:
        OpenTelemetry Tracer instance
    """
    return trace.get_tracer(name)


@contextmanager
def stage(name: str, **attributes: Any) -> Iterator[trace.Span]:
    """
    Run a pipeline stage inside a span, timing it.

    Library errors get the stage name attached; any other exception is
    re-raised as ``PipelineError`` so callers see ``<stage>: <message>``.

    Example:
        with stage("filter", streams=32):
            hemo = apply_bandpass(hemo, spec)
    """
    tracer = get_tracer(__name__)
    start = time.perf_counter()
    success = False
    with tracer.start_as_current_span(f"stage.{name}") as span:
        for key, value in attributes.items():
            span.set_attribute(f"stage.{key}", value)
        try:
            yield span
            success = True
        except FnirsError as exc:
            if exc.stage is None:
                exc.stage = name
            span.record_exception(exc)
            raise
        except Exception as exc:
            span.record_exception(exc)
            raise PipelineError(f"{type(exc).__name__}: {exc}", stage=name) from exc
        finally:
            duration = time.perf_counter() - start
            span.set_attribute("stage.duration_seconds", duration)
            span.set_attribute("stage.success", success)
            record_stage(name, duration, success)
            logger.info(
                f"Stage {name} {'completed' if success else 'failed'}",
                extra={
                    "extra_fields": {
                        "stage": name,
                        "duration_seconds": round(duration, 6),
                        "success": success,
                    }
                },
            )


def trace_operation(operation_name: Optional[str] = None, attributes: Optional[dict] = None):
    """
    Decorator to trace a function execution.

    Args:
        operation_name: Custom operation name (defaults to module.function)
        attributes: Additional attributes to add to the span

    Example:
        @trace_operation("ica_fit", {"dimred.method": "fastica"})
        def ica_fit(X, n_components=20):
            ...
    """
    def decorator(func: Callable) -> Callable:
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            tracer = get_tracer(func.__module__)
            span_name = operation_name or f"{func.__module__}.{func.__name__}"

            with tracer.start_as_current_span(span_name) as span:
                if attributes:
                    for key, value in attributes.items():
                        span.set_attribute(key, value)
                span.set_attribute("function.name", func.__name__)
                try:
                    result = func(*args, **kwargs)
                    span.set_attribute("result.success", True)
                    return result
                except Exception as e:
                    span.set_attribute("result.success", False)
                    span.set_attribute("error.type", type(e).__name__)
                    span.record_exception(e)
                    raise

        return wrapper

    return decorator
