"""Domain value objects."""

from .base import FloatArray, ValueObject, array_from_json, array_to_json, frozen_array

__all__ = ["FloatArray", "ValueObject", "array_from_json", "array_to_json", "frozen_array"]
