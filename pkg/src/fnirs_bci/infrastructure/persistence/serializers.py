"""
Tagged JSON documents for the fitted models a container can hold.

Every model is a pydantic model whose array fields dump as
``{"shape": [...], "data": [...]}``; a document is the JSON-mode dump plus a
``"kind"`` tag naming the model type.
"""

from typing import Any, TypeVar

import numpy as np
from pydantic import BaseModel, ConfigDict

from ...classifiers import LinearModel, SldaModel, Standardizer
from ...dimred import IcaModel, KpcaModel
from ...domain import ContainerError, FloatArray
from ...nn import ModelSpec, NadamState, ParamStore

TModel = TypeVar("TModel", bound=BaseModel)


class NetworkDocument(BaseModel):
    """Network description plus parameters and batch-norm buffers (optimizer moments dropped)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    spec: ModelSpec
    params: dict[str, FloatArray]
    buffers: dict[str, FloatArray]


MODEL_KINDS: dict[str, type[BaseModel]] = {
    "ica": IcaModel,
    "kpca": KpcaModel,
    "linear": LinearModel,
    "slda": SldaModel,
    "scaler": Standardizer,
    "network": NetworkDocument,
}


def model_to_dict(model: BaseModel) -> dict[str, Any]:
    """``{"kind": ..., **model.model_dump(mode="json")}``."""
    for kind, model_type in MODEL_KINDS.items():
        if type(model) is model_type:
            break
    else:
        raise ContainerError(f"cannot store a {type(model).__name__} in a model container")
    try:
        return {"kind": kind, **model.model_dump(mode="json")}
    except ValueError as exc:
        raise ContainerError(f"cannot store {kind} model: {exc}") from exc


def model_from_dict(blob: dict[str, Any], model_type: type[TModel]) -> TModel:
    """
    Validate a tagged document back into ``model_type``.

    Raises:
        ContainerError: The tag names another model type, or validation fails
    """
    kind = blob.get("kind") if isinstance(blob, dict) else None
    if MODEL_KINDS.get(str(kind)) is not model_type:
        raise ContainerError(f"expected a {model_type.__name__} document, found kind {kind!r}")
    try:
        return model_type.model_validate({k: v for k, v in blob.items() if k != "kind"})
    except ValueError as exc:
        raise ContainerError(f"invalid {kind} document: {exc}") from exc


def dimred_from_dict(blob: dict[str, Any]) -> IcaModel | KpcaModel:
    kind = blob.get("kind")
    if kind == "ica":
        return model_from_dict(blob, IcaModel)
    if kind == "kpca":
        return model_from_dict(blob, KpcaModel)
    raise ContainerError(f"unknown reduction model kind {kind!r}")


def network_to_dict(spec: ModelSpec, store: ParamStore) -> dict[str, Any]:
    return model_to_dict(NetworkDocument(spec=spec, params=store.params, buffers=store.buffers))


def network_from_dict(blob: dict[str, Any]) -> tuple[ModelSpec, ParamStore]:
    document = model_from_dict(blob, NetworkDocument)
    params = {name: np.array(value) for name, value in document.params.items()}
    store = ParamStore(
        params=params,
        buffers={name: np.array(value) for name, value in document.buffers.items()},
        optimizer=NadamState.zeros_like(params),
    )
    return document.spec, store
