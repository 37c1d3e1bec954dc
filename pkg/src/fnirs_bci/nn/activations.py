"""Activation functions and their derivatives with respect to the pre-activation."""

from fnirs_bci._compat import StrEnum
from typing import Callable, Optional

import numpy as np
from scipy.special import expit

SELU_LAMBDA = 1.0507009873554805
SELU_ALPHA = 1.6732632423543772


class Activation(StrEnum):
    LINEAR = "linear"
    RELU = "relu"
    SELU = "selu"
    SIGMOID = "sigmoid"


def relu(x: np.ndarray, max_value: Optional[float] = None) -> np.ndarray:
    """max(0, x), clipped at ``max_value`` when given."""
    y = np.maximum(x, 0.0)
    return y if max_value is None else np.minimum(y, max_value)


def relu_grad(x: np.ndarray, max_value: Optional[float] = None) -> np.ndarray:
    x = np.asarray(x)
    active = x > 0.0
    if max_value is not None:
        active &= x < max_value
    return active.astype(np.float64)


def selu(x: np.ndarray) -> np.ndarray:
    """lambda * x for x > 0, lambda * alpha * (exp(x) - 1) otherwise."""
    x = np.asarray(x, dtype=np.float64)
    return SELU_LAMBDA * np.where(x > 0.0, x, SELU_ALPHA * np.expm1(np.minimum(x, 0.0)))


def selu_grad(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    return SELU_LAMBDA * np.where(x > 0.0, 1.0, SELU_ALPHA * np.exp(np.minimum(x, 0.0)))


def sigmoid(x: np.ndarray) -> np.ndarray:
    return expit(x)


def sigmoid_grad(x: np.ndarray) -> np.ndarray:
    s = expit(x)
    return s * (1.0 - s)


def linear(x: np.ndarray) -> np.ndarray:
    return np.asarray(x, dtype=np.float64)


def linear_grad(x: np.ndarray) -> np.ndarray:
    return np.ones_like(x, dtype=np.float64)


def softmax(z: np.ndarray, axis: int = -1) -> np.ndarray:
    """Max-subtracted exponentials normalized along ``axis``."""
    z = np.asarray(z, dtype=np.float64)
    shifted = np.exp(z - z.max(axis=axis, keepdims=True))
    return shifted / shifted.sum(axis=axis, keepdims=True)


ElementwiseFn = Callable[[np.ndarray], np.ndarray]

ACTIVATIONS: dict[Activation, tuple[ElementwiseFn, ElementwiseFn]] = {
    Activation.LINEAR: (linear, linear_grad),
    Activation.RELU: (relu, relu_grad),
    Activation.SELU: (selu, selu_grad),
    Activation.SIGMOID: (sigmoid, sigmoid_grad),
}
