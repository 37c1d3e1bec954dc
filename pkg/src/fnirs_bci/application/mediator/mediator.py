"""Synchronous mediator with tracing, logging and command metrics."""

import time
from typing import Any, Callable, Optional

from ...observability import get_logger, get_tracer, record_command
from .base import IMediator, Request, RequestHandler
from .registry import HandlerRegistry

logger = get_logger(__name__)


class Mediator(IMediator):
    """
    Routes requests to their registered handlers.

    Every ``send`` runs inside a ``mediator.send.<Request>`` span, is logged
    on start and completion, and counts towards
    ``fnirs_command_requests_total``.

    Example:
        >>> mediator = Mediator()
        >>> mediator.register_handler_factory(SynthCommand, SynthHandler)
        >>> result = mediator.send(SynthCommand(config=config))
    """

    def __init__(self, registry: HandlerRegistry | None = None) -> None:
        self._registry = registry or HandlerRegistry()

    def send(self, request: Request) -> Any:
        request_type = type(request)
        request_name = request_type.__name__
        handler = self._registry.get_handler(request_type)
        if handler is None:
            raise LookupError(
                f"No handler registered for request type: {request_name}. "
                "Register one with register_handler_factory()."
            )
        handler_name = type(handler).__name__

        tracer = get_tracer(__name__)
        with tracer.start_as_current_span(f"mediator.send.{request_name}") as span:
            span.set_attribute("mediator.request_type", request_name)
            span.set_attribute("mediator.handler_type", handler_name)
            return self._execute(request, handler, request_name, handler_name, span)

    def _execute(
        self,
        request: Request,
        handler: RequestHandler[Any, Any],
        request_name: str,
        handler_name: str,
        span: Optional[Any],
    ) -> Any:
        start_time = time.perf_counter()
        success = False
        logger.info(
            f"Mediator processing request: {request_name}",
            extra={
                "extra_fields": {
                    "mediator.request_type": request_name,
                    "mediator.handler_type": handler_name,
                }
            },
        )
        try:
            result = handler.handle(request)
            success = True
            return result
        except Exception as exc:
            if span is not None:
                span.record_exception(exc)
            logger.debug(
                f"Mediator request failed: {request_name}",
                extra={"extra_fields": {"error_type": type(exc).__name__}},
            )
            raise
        finally:
            duration = time.perf_counter() - start_time
            if span is not None:
                span.set_attribute("mediator.success", success)
            record_command(_command_name(request_name), success)
            if success:
                logger.info(
                    f"Mediator completed request: {request_name}",
                    extra={
                        "extra_fields": {
                            "mediator.request_type": request_name,
                            "duration_ms": round(duration * 1000, 3),
                        }
                    },
                )

    def register_handler_factory(
        self, request_type: type[Request], factory: Callable[[], RequestHandler[Any, Any]]
    ) -> None:
        self._registry.register_factory(request_type, factory)


def _command_name(request_name: str) -> str:
    """``TrainCommand`` -> ``train``."""
    return request_name.removesuffix("Command").lower()
