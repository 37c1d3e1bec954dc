"""Model persistence."""

from .container import (
    CONTAINER_FORMAT_VERSION,
    CONTAINER_MAGIC,
    ModelContainer,
    load_container,
    payload_checksum,
    save_container,
)
from .serializers import (
    MODEL_KINDS,
    NetworkDocument,
    dimred_from_dict,
    model_from_dict,
    model_to_dict,
    network_from_dict,
    network_to_dict,
)

__all__ = [
    "CONTAINER_MAGIC",
    "CONTAINER_FORMAT_VERSION",
    "ModelContainer",
    "payload_checksum",
    "save_container",
    "load_container",
    "MODEL_KINDS",
    "NetworkDocument",
    "model_to_dict",
    "model_from_dict",
    "dimred_from_dict",
    "network_to_dict",
    "network_from_dict",
]
