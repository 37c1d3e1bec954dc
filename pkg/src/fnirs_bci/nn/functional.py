"""
Forward and backward passes of individual layers.

Every ``*_forward`` returns ``(output, cache)`` and the matching
``*_backward(d_output, cache)`` returns ``(d_input, grads)``. Arrays are
float64 throughout; sequence tensors are [batch x time x feature].
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..domain import InvalidInputError
from .activations import ACTIVATIONS, Activation, relu, relu_grad, sigmoid

# ---------------------------------------------------------------------------
# dense (time-distributed or pooled)
# ---------------------------------------------------------------------------


def td_dense_forward(
    x: np.ndarray, W: np.ndarray, b: np.ndarray, activation: Activation | str = Activation.LINEAR
) -> tuple[np.ndarray, tuple]:
    """
    Apply ``act(x @ W + b)`` at every position along the last axis.

    Works for [batch x time x feature] and [batch x feature] inputs alike.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] != W.shape[0]:
        raise InvalidInputError(
            f"dense layer expects feature width {W.shape[0]}, got {x.shape[-1]}"
        )
    act, _ = ACTIVATIONS[Activation(activation)]
    z = x @ W + b
    return act(z), (x, W, z, Activation(activation))


def td_dense_backward(dy: np.ndarray, cache: tuple) -> tuple[np.ndarray, dict[str, np.ndarray]]:
    x, W, z, activation = cache
    _, act_grad = ACTIVATIONS[activation]
    dz = dy * act_grad(z)
    flat_x = x.reshape(-1, x.shape[-1])
    flat_dz = dz.reshape(-1, dz.shape[-1])
    grads = {"kernel": flat_x.T @ flat_dz, "bias": flat_dz.sum(axis=0)}
    return dz @ W.T, grads


dense_forward = td_dense_forward
dense_backward = td_dense_backward


# ---------------------------------------------------------------------------
# LSTM
# ---------------------------------------------------------------------------


def _split_gates(a: np.ndarray, units: int) -> tuple[np.ndarray, ...]:
    return a[:, :units], a[:, units : 2 * units], a[:, 2 * units : 3 * units], a[:, 3 * units :]


def lstm_cell_forward(
    x_t: np.ndarray,
    h_prev: np.ndarray,
    c_prev: np.ndarray,
    params: dict[str, np.ndarray],
    mask: Optional[np.ndarray] = None,
    relu_cap: Optional[float] = None,
) -> tuple[np.ndarray, np.ndarray, tuple]:
    """
    One LSTM step with gate order (i, f, g, o).

    Gates i, f, o are sigmoid; the candidate g and the cell output use ReLU:
    ``c_t = f*c_prev + i*g`` and ``h_t = o*relu(c_t)``. With ``relu_cap``
    both ReLUs saturate at the cap, which keeps ``h_t`` in ``[0, relu_cap]``.

    Args:
        x_t: [batch x feature]
        h_prev: [batch x units]
        c_prev: [batch x units]
        params: ``kernel`` [feature x 4u], ``recurrent`` [u x 4u], ``bias`` [4u]
        mask: Recurrent dropout mask applied to ``h_prev`` (already scaled)
        relu_cap: Upper clip of the candidate and output ReLUs; unbounded when None

    Returns:
        (h_t, c_t, cache)
    """
    units = h_prev.shape[1]
    h_in = h_prev if mask is None else h_prev * mask
    a = x_t @ params["kernel"] + h_in @ params["recurrent"] + params["bias"]
    a_i, a_f, a_g, a_o = _split_gates(a, units)
    i, f, o = sigmoid(a_i), sigmoid(a_f), sigmoid(a_o)
    g = relu(a_g, relu_cap)
    c_t = f * c_prev + i * g
    h_t = o * relu(c_t, relu_cap)
    return h_t, c_t, (x_t, h_in, c_prev, a_g, i, f, g, o, c_t)


@dataclass
class LstmCache:
    steps: list[tuple] = field(default_factory=list)
    mask: Optional[np.ndarray] = None
    params: dict[str, np.ndarray] = field(default_factory=dict)
    relu_cap: Optional[float] = None


def lstm_forward(
    x: np.ndarray,
    params: dict[str, np.ndarray],
    mask: Optional[np.ndarray] = None,
    relu_cap: Optional[float] = None,
) -> tuple[np.ndarray, LstmCache]:
    """Run a single direction over t = 0..T-1 from zero state; returns [batch x time x units]."""
    batch, steps, width = x.shape
    if width != params["kernel"].shape[0]:
        raise InvalidInputError(
            f"LSTM expects feature width {params['kernel'].shape[0]}, got {width}"
        )
    units = params["recurrent"].shape[0]
    h = np.zeros((batch, units))
    c = np.zeros((batch, units))
    outputs = np.empty((batch, steps, units))
    cache = LstmCache(mask=mask, params=params, relu_cap=relu_cap)
    for t in range(steps):
        h, c, step = lstm_cell_forward(x[:, t, :], h, c, params, mask, relu_cap)
        outputs[:, t, :] = h
        cache.steps.append(step)
    return outputs, cache


def lstm_backward(
    dh_seq: np.ndarray, cache: LstmCache
) -> tuple[np.ndarray, dict[str, np.ndarray]]:
    """Backpropagation through time; ``dh_seq`` holds the loss gradient of every output step."""
    W, U = cache.params["kernel"], cache.params["recurrent"]
    cap = cache.relu_cap
    batch, steps, units = dh_seq.shape
    grads = {"kernel": np.zeros_like(W), "recurrent": np.zeros_like(U), "bias": np.zeros(4 * units)}
    dx = np.empty((batch, steps, W.shape[0]))
    dh_next = np.zeros((batch, units))
    dc_next = np.zeros((batch, units))
    for t in range(steps - 1, -1, -1):
        x_t, h_in, c_prev, a_g, i, f, g, o, c_t = cache.steps[t]
        dh = dh_seq[:, t, :] + dh_next
        do = dh * relu(c_t, cap)
        dc = dc_next + dh * o * relu_grad(c_t, cap)
        da = np.concatenate(
            [
                dc * g * i * (1.0 - i),
                dc * c_prev * f * (1.0 - f),
                dc * i * relu_grad(a_g, cap),
                do * o * (1.0 - o),
            ],
            axis=1,
        )
        grads["kernel"] += x_t.T @ da
        grads["recurrent"] += h_in.T @ da
        grads["bias"] += da.sum(axis=0)
        dx[:, t, :] = da @ W.T
        dh_next = da @ U.T
        if cache.mask is not None:
            dh_next = dh_next * cache.mask
        dc_next = dc * f
    return dx, grads


def bilstm_forward(
    x: np.ndarray,
    fwd_params: dict[str, np.ndarray],
    bwd_params: dict[str, np.ndarray],
    return_sequences: bool,
    fwd_mask: Optional[np.ndarray] = None,
    bwd_mask: Optional[np.ndarray] = None,
    relu_cap: Optional[float] = None,
) -> tuple[np.ndarray, tuple]:
    """
    Forward pass over time plus an independent pass over reversed time.

    With ``return_sequences`` the output at step t is ``[h_fwd(t), h_bwd(t)]``
    (width 2u); otherwise it is ``[h_fwd(T-1), h_bwd(0)]``.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 3:
        raise InvalidInputError("BiLSTM expects a [batch x time x feature] tensor")
    h_fwd, fwd_cache = lstm_forward(x, fwd_params, fwd_mask, relu_cap)
    h_bwd_rev, bwd_cache = lstm_forward(x[:, ::-1, :], bwd_params, bwd_mask, relu_cap)
    if return_sequences:
        out = np.concatenate([h_fwd, h_bwd_rev[:, ::-1, :]], axis=2)
    else:
        out = np.concatenate([h_fwd[:, -1, :], h_bwd_rev[:, -1, :]], axis=1)
    return out, (fwd_cache, bwd_cache, return_sequences, h_fwd.shape)


def bilstm_backward(
    dy: np.ndarray, cache: tuple
) -> tuple[np.ndarray, dict[str, np.ndarray]]:
    fwd_cache, bwd_cache, return_sequences, shape = cache
    units = shape[2]
    if return_sequences:
        dh_fwd = dy[:, :, :units]
        dh_bwd_rev = dy[:, ::-1, units:]
    else:
        dh_fwd = np.zeros(shape)
        dh_bwd_rev = np.zeros(shape)
        dh_fwd[:, -1, :] = dy[:, :units]
        dh_bwd_rev[:, -1, :] = dy[:, units:]
    dx_fwd, g_fwd = lstm_backward(np.ascontiguousarray(dh_fwd), fwd_cache)
    dx_bwd_rev, g_bwd = lstm_backward(np.ascontiguousarray(dh_bwd_rev), bwd_cache)
    grads = {f"fwd_{name}": value for name, value in g_fwd.items()}
    grads.update({f"bwd_{name}": value for name, value in g_bwd.items()})
    return dx_fwd + dx_bwd_rev[:, ::-1, :], grads


# ---------------------------------------------------------------------------
# batch normalization
# ---------------------------------------------------------------------------


def batchnorm_forward(
    x: np.ndarray,
    gamma: np.ndarray,
    beta: np.ndarray,
    mode: str,
    running_mean: np.ndarray,
    running_var: np.ndarray,
    eps: float = 1e-5,
) -> tuple[np.ndarray, tuple]:
    """
    Normalize every feature over all other axes.

    In train mode the batch statistics are used and returned in the cache
    (``cache[-2:]``) so the caller can update the running averages; in infer
    mode the running statistics are used.
    """
    x = np.asarray(x, dtype=np.float64)
    axes = tuple(range(x.ndim - 1))
    if mode == "train":
        if x.shape[0] < 2:
            raise InvalidInputError("batch normalization needs a batch of at least 2 in train mode")
        mean = x.mean(axis=axes)
        var = x.var(axis=axes)
    else:
        mean, var = running_mean, running_var
    inv_std = 1.0 / np.sqrt(var + eps)
    x_hat = (x - mean) * inv_std
    return gamma * x_hat + beta, (mode, x_hat, gamma, inv_std, axes, mean, var)


def batchnorm_backward(
    dy: np.ndarray, cache: tuple
) -> tuple[np.ndarray, dict[str, np.ndarray]]:
    mode, x_hat, gamma, inv_std, axes, _, _ = cache
    grads = {"gamma": (dy * x_hat).sum(axis=axes), "beta": dy.sum(axis=axes)}
    dx_hat = dy * gamma
    if mode != "train":
        return dx_hat * inv_std, grads
    count = x_hat.size // x_hat.shape[-1]
    dx = (
        inv_std
        / count
        * (
            count * dx_hat
            - dx_hat.sum(axis=axes)
            - x_hat * (dx_hat * x_hat).sum(axis=axes)
        )
    )
    return dx, grads


def update_running_stats(
    running_mean: np.ndarray,
    running_var: np.ndarray,
    batch_mean: np.ndarray,
    batch_var: np.ndarray,
    momentum: float = 0.99,
) -> tuple[np.ndarray, np.ndarray]:
    """Exponential moving average: ``running <- momentum*running + (1-momentum)*batch``."""
    return (
        momentum * running_mean + (1.0 - momentum) * batch_mean,
        momentum * running_var + (1.0 - momentum) * batch_var,
    )


# ---------------------------------------------------------------------------
# stochastic regularizers
# ---------------------------------------------------------------------------


def dropout_mask(
    shape: tuple[int, ...], rate: float, rng: np.random.Generator
) -> np.ndarray:
    """Inverted-dropout mask: 0 with probability ``rate``, else 1 / (1 - rate)."""
    if not 0.0 <= rate < 1.0:
        raise InvalidInputError(f"dropout rate must lie in [0, 1), got {rate}")
    return (rng.random(shape) >= rate) / (1.0 - rate)


def dropout_forward(
    x: np.ndarray, rate: float, mode: str, rng: Optional[np.random.Generator] = None
) -> tuple[np.ndarray, Optional[np.ndarray]]:
    """Identity in infer mode or at rate 0; otherwise multiplies by a fresh mask."""
    if not 0.0 <= rate < 1.0:
        raise InvalidInputError(f"dropout rate must lie in [0, 1), got {rate}")
    x = np.asarray(x, dtype=np.float64)
    if mode != "train" or rate == 0.0:
        return x, None
    if rng is None:
        raise InvalidInputError("train-mode dropout needs a random generator")
    mask = dropout_mask(x.shape, rate, rng)
    return x * mask, mask


def dropout_backward(dy: np.ndarray, mask: Optional[np.ndarray]) -> np.ndarray:
    return dy if mask is None else dy * mask


def gaussian_noise(
    x: np.ndarray, sigma: float, mode: str, rng: Optional[np.random.Generator] = None
) -> np.ndarray:
    """Add N(0, sigma^2) in train mode; identity otherwise."""
    x = np.asarray(x, dtype=np.float64)
    if mode != "train" or sigma == 0.0:
        return x
    if rng is None:
        raise InvalidInputError("train-mode noise needs a random generator")
    return x + rng.normal(0.0, sigma, size=x.shape)
