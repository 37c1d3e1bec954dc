"""Handler registry for the mediator pattern."""

from typing import Any, Callable, Dict, Optional

from .base import Request, RequestHandler


class HandlerRegistry:
    """
    Maps request types to handler factories.

    A factory is called once per request, so every request gets a handler
    with fresh state.
    """

    def __init__(self) -> None:
        self._factories: Dict[type[Request], Callable[[], RequestHandler[Any, Any]]] = {}

    def register_factory(
        self, request_type: type[Request], factory: Callable[[], RequestHandler[Any, Any]]
    ) -> None:
        """
        Register a handler factory for a request type.

        Raises:
            ValueError: If a handler is already registered for this type
        """
        if self.has_handler(request_type):
            raise ValueError(f"Handler already registered for {request_type.__name__}")
        self._factories[request_type] = factory

    def get_handler(self, request_type: type[Request]) -> Optional[RequestHandler[Any, Any]]:
        """A new handler for ``request_type``, or None when nothing is registered."""
        factory = self._factories.get(request_type)
        return factory() if factory is not None else None

    def has_handler(self, request_type: type[Request]) -> bool:
        return request_type in self._factories
