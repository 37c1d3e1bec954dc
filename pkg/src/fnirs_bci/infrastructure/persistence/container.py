"""
Versioned model container.

The file is the magic line ``FNIRSBCI`` followed by one JSON document
``{"format_version": 1, "checksum": <sha256>, "payload": {...}}``. The
checksum covers the canonical (sorted-key, compact) JSON of the payload.
"""

import hashlib
import json
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field

from ...domain import ContainerError
from ..io.atomic import atomic_write_text, ensure_writable

CONTAINER_MAGIC = "FNIRSBCI"
CONTAINER_FORMAT_VERSION = 1


def canonical_json(payload: dict[str, Any]) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), allow_nan=False)


def payload_checksum(payload: dict[str, Any]) -> str:
    return hashlib.sha256(canonical_json(payload).encode("utf-8")).hexdigest()


class ModelContainer(BaseModel):
    """
    A trained pipeline as stored on disk.

    ``config`` is the configuration snapshot, ``dimred`` the serialized
    reduction model (if any), ``classifier`` the serialized classifier and
    ``extras`` anything else the pipeline needs at evaluation time (feature
    names, scaler statistics, the data split).
    """

    model_config = ConfigDict(frozen=True)

    format_version: int = CONTAINER_FORMAT_VERSION
    pipeline: str
    config: dict[str, Any] = Field(default_factory=dict)
    dimred: Optional[dict[str, Any]] = None
    classifier: dict[str, Any]
    extras: dict[str, Any] = Field(default_factory=dict)

    def payload(self) -> dict[str, Any]:
        return self.model_dump(exclude={"format_version"})

    @property
    def checksum(self) -> str:
        return payload_checksum(self.payload())


def save_container(container: ModelContainer, path: str | Path, force: bool = False) -> str:
    """
    Write ``container`` atomically.

    Returns:
        The payload checksum
    """
    target = ensure_writable(path, force)
    payload = container.payload()
    checksum = payload_checksum(payload)
    document = {
        "format_version": container.format_version,
        "checksum": checksum,
        "payload": payload,
    }
    atomic_write_text(target, f"{CONTAINER_MAGIC}\n{canonical_json(document)}\n")
    return checksum


def load_container(path: str | Path) -> ModelContainer:
    """
    Read and verify a container.

    Raises:
        ContainerError: Missing file, bad magic, unsupported version, or checksum mismatch
    """
    source = Path(path)
    try:
        text = source.read_text(encoding="utf-8")
    except OSError as exc:
        raise ContainerError(f"{source}: cannot read model container ({exc.strerror})") from exc
    magic, _, body = text.partition("\n")
    if magic != CONTAINER_MAGIC:
        raise ContainerError(f"{source}: not a model container (bad magic)")
    try:
        document = json.loads(body)
        version = int(document["format_version"])
        checksum = str(document["checksum"])
        payload = document["payload"]
    except (ValueError, KeyError, TypeError) as exc:
        raise ContainerError(f"{source}: malformed container body") from exc
    if version != CONTAINER_FORMAT_VERSION:
        raise ContainerError(
            f"{source}: container format version {version} is not supported "
            f"(expected {CONTAINER_FORMAT_VERSION})"
        )
    if payload_checksum(payload) != checksum:
        raise ContainerError(f"{source}: checksum mismatch, the container is corrupted")
    try:
        return ModelContainer(format_version=version, **payload)
    except ValueError as exc:
        raise ContainerError(f"{source}: invalid container payload: {exc}") from exc
