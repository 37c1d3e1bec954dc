"""Nadam optimizer (Adam with Nesterov momentum, constant momentum schedule)."""

from dataclasses import dataclass, field

import numpy as np


@dataclass
class NadamState:
    """First and second moments per parameter plus the shared step counter."""

    m: dict[str, np.ndarray] = field(default_factory=dict)
    n: dict[str, np.ndarray] = field(default_factory=dict)
    t: int = 0

    @classmethod
    def zeros_like(cls, params: dict[str, np.ndarray]) -> "NadamState":
        return cls(
            m={name: np.zeros_like(value) for name, value in params.items()},
            n={name: np.zeros_like(value) for name, value in params.items()},
        )

    def copy(self) -> "NadamState":
        return NadamState(
            m={name: value.copy() for name, value in self.m.items()},
            n={name: value.copy() for name, value in self.n.items()},
            t=self.t,
        )


def nadam_step(
    params: dict[str, np.ndarray],
    grads: dict[str, np.ndarray],
    state: NadamState,
    lr: float,
    beta1: float = 0.9,
    beta2: float = 0.999,
    eps: float = 1e-8,
) -> tuple[dict[str, np.ndarray], NadamState]:
    """
    One Nadam update.

    ``m <- b1*m + (1-b1)*g`` and ``n <- b2*n + (1-b2)*g^2``; the step uses
    ``m_hat = b1*m/(1-b1^(t+1)) + (1-b1)*g/(1-b1^t)`` and ``n_hat = n/(1-b2^t)``:
    ``theta <- theta - lr*m_hat/(sqrt(n_hat) + eps)``.

    Args:
        params: Current parameters
        grads: Gradients with the same keys and shapes
        state: Moments from the previous step
        lr: Learning rate

    Returns:
        (new params, new state); the inputs are not modified
    """
    if set(params) != set(grads):
        raise ValueError("gradients do not match the parameter set")
    t = state.t + 1
    new_params: dict[str, np.ndarray] = {}
    new_state = NadamState(t=t)
    for name, theta in params.items():
        g = grads[name]
        m_prev = state.m.get(name, np.zeros_like(theta))
        n_prev = state.n.get(name, np.zeros_like(theta))
        if m_prev.shape != theta.shape or g.shape != theta.shape:
            raise ValueError(f"shape mismatch for parameter {name}")
        m = beta1 * m_prev + (1.0 - beta1) * g
        n = beta2 * n_prev + (1.0 - beta2) * g * g
        m_hat = beta1 * m / (1.0 - beta1 ** (t + 1)) + (1.0 - beta1) * g / (1.0 - beta1**t)
        n_hat = n / (1.0 - beta2**t)
        new_params[name] = theta - lr * m_hat / (np.sqrt(n_hat) + eps)
        new_state.m[name] = m
        new_state.n[name] = n
    return new_params, new_state
