"""Base ValueObject class for domain value objects."""

from abc import ABC
from typing import Annotated, Any

import numpy as np
from pydantic import BaseModel, BeforeValidator, ConfigDict, PlainSerializer


def frozen_array(values: Any, dtype: Any = np.float64) -> np.ndarray:
    """Copy ``values`` into a contiguous read-only array of ``dtype``."""
    array = np.array(values, dtype=dtype, copy=True, order="C")
    array.setflags(write=False)
    return array


def array_to_json(array: np.ndarray) -> dict[str, Any]:
    """``{"shape": [...], "data": [...]}``, data flattened in C order."""
    if not np.all(np.isfinite(array)):
        raise ValueError("non-finite values cannot be serialized")
    return {"shape": list(array.shape), "data": np.asarray(array).ravel().tolist()}


def array_from_json(value: Any) -> np.ndarray:
    """Accept an array-like or the ``array_to_json`` layout; return a frozen float64 array."""
    if isinstance(value, dict):
        try:
            value = np.asarray(value["data"], dtype=np.float64).reshape(value["shape"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed array: {exc}") from exc
    return frozen_array(value)


# Read-only float64 array field; dumps as shape plus flat data in JSON mode.
FloatArray = Annotated[
    np.ndarray,
    BeforeValidator(array_from_json),
    PlainSerializer(array_to_json, when_used="json"),
]


class ValueObject(BaseModel, ABC):
    """
    Base class for all value objects.

    A value object is an immutable object that is defined by its attributes.
    Value objects have no identity - two value objects with the same attributes
    are considered equal. Array attributes are stored read-only and compared
    element-wise.
    """

    model_config = ConfigDict(
        frozen=True,
        arbitrary_types_allowed=True,
        validate_assignment=True,
    )

    def __eq__(self, other: Any) -> bool:
        """
        Value objects are equal if all their attributes are equal.

        Args:
            other: The other object to compare with

        Returns:
            True if all attributes are equal, False otherwise
        """
        if not isinstance(other, self.__class__):
            return False
        for name in type(self).model_fields:
            mine, theirs = getattr(self, name), getattr(other, name)
            if isinstance(mine, np.ndarray) or isinstance(theirs, np.ndarray):
                if not (
                    np.shape(mine) == np.shape(theirs) and np.array_equal(mine, theirs)
                ):
                    return False
            elif mine != theirs:
                return False
        return True

    def __hash__(self) -> int:
        """
        Hash based on all attributes.

        Returns:
            Hash of all attributes
        """
        parts = []
        for name in type(self).model_fields:
            value = getattr(self, name)
            if isinstance(value, np.ndarray):
                parts.append((name, value.shape, value.tobytes()))
            elif isinstance(value, dict):
                parts.append((name, tuple(sorted(value.items()))))
            else:
                parts.append((name, value))
        return hash(tuple(parts))
