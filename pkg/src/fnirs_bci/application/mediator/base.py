"""Base classes for the mediator pattern."""

from abc import ABC, abstractmethod
from typing import Any, Callable, Generic, TypeVar

from pydantic import BaseModel, ConfigDict

TRequest = TypeVar("TRequest", bound="Request")
TResponse = TypeVar("TResponse")


class Request(BaseModel, ABC):
    """
    Base class for every command sent through the mediator.

    A request is an immutable description of one unit of work; the handler
    registered for its type carries it out.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class RequestHandler(ABC, Generic[TRequest, TResponse]):
    """
    Base class for request handlers.

    Each handler handles exactly one request type.
    """

    @abstractmethod
    def handle(self, request: TRequest) -> TResponse:
        """
        Handle the request.

        Args:
            request: The request to handle

        Returns:
            The response from handling the request
        """


class IMediator(ABC):
    """Routes requests to their handlers, decoupling the sender from the receiver."""

    @abstractmethod
    def send(self, request: Request) -> Any:
        """
        Send a request to its handler.

        Raises:
            LookupError: If no handler is registered for the request type
        """

    @abstractmethod
    def register_handler_factory(
        self, request_type: type[Request], factory: Callable[[], RequestHandler[Any, Any]]
    ) -> None:
        """
        Register a handler factory for a request type.

        The factory is called for every request, so handlers can be built
        with fresh state each time.
        """
