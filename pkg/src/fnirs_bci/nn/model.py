"""
Parameter storage, whole-network forward/backward and inference.
"""

import hashlib
import math
from dataclasses import dataclass, field
from typing import Any, NamedTuple, Optional

import numpy as np

from ..domain import (
    EpochSet,
    InvalidInputError,
    RandomStream,
    TrainingDivergedError,
    make_rng,
)
from . import functional as F
from .activations import softmax
from .initializers import lecun_normal_init
from .layers import (
    BatchNorm,
    BiLSTM,
    DensePooled,
    Dropout,
    GaussianNoise,
    ModelSpec,
    Output,
    TimeDistributedDense,
)
from .loss import l2_penalty, loss_forward, one_hot, softmax_cross_entropy_grad
from .optim import NadamState

PREDICT_BATCH = 64
REGULARIZED_SUFFIXES = ("kernel",)


def is_regularized(name: str) -> bool:
    """Input kernels carry the L2 penalty; recurrent kernels, biases and batch-norm do not."""
    leaf = name.split("/", 1)[1]
    for prefix in ("fwd_", "bwd_"):
        if leaf.startswith(prefix):
            leaf = leaf[len(prefix) :]
    return leaf in REGULARIZED_SUFFIXES


@dataclass
class ParamStore:
    """
    Trainable parameters, batch-norm running statistics and Nadam moments.

    Keys are ``"<index:02d>_<kind>/<name>"``, e.g. ``"02_bilstm/fwd_recurrent"``.
    """

    params: dict[str, np.ndarray] = field(default_factory=dict)
    buffers: dict[str, np.ndarray] = field(default_factory=dict)
    optimizer: NadamState = field(default_factory=NadamState)

    def copy(self) -> "ParamStore":
        return ParamStore(
            params={name: value.copy() for name, value in self.params.items()},
            buffers={name: value.copy() for name, value in self.buffers.items()},
            optimizer=self.optimizer.copy(),
        )

    def kernels(self) -> list[np.ndarray]:
        return [value for name, value in sorted(self.params.items()) if is_regularized(name)]

    def checksum(self) -> str:
        """sha256 over names and little-endian float64 bytes of params and buffers."""
        digest = hashlib.sha256()
        for group, arrays in (("param", self.params), ("buffer", self.buffers)):
            for name in sorted(arrays):
                digest.update(f"{group}:{name}:{arrays[name].shape}".encode())
                digest.update(np.ascontiguousarray(arrays[name], dtype="<f8").tobytes())
        return digest.hexdigest()

    def first_nonfinite(self) -> Optional[str]:
        """Name of the first non-finite parameter, or None."""
        for name in sorted(self.params):
            if not np.all(np.isfinite(self.params[name])):
                return name
        return None


def build_params(spec: ModelSpec, seed: int) -> ParamStore:
    """
    Initialize every layer: LeCun-normal kernels, zero biases, unit batch-norm
    scale, running mean 0 and running variance 1.

    LSTM forget biases are 1, or chrono-initialized when the layer sets
    ``memory_steps`` > 2: ``b_f = log(u)`` with ``u ~ U(1, memory_steps - 1)``
    and ``b_i = -b_f``.
    """
    rng = make_rng(seed, RandomStream.INIT)
    store = ParamStore()
    shapes = spec.layer_shapes()
    for name, layer, (_, width) in zip(spec.layer_names(), spec.layers, shapes):
        if isinstance(layer, (TimeDistributedDense, DensePooled, Output)):
            store.params[f"{name}/kernel"] = lecun_normal_init((width, layer.units), width, rng)
            store.params[f"{name}/bias"] = np.zeros(layer.units)
        elif isinstance(layer, BiLSTM):
            units = layer.units
            for direction in ("fwd", "bwd"):
                store.params[f"{name}/{direction}_kernel"] = lecun_normal_init(
                    (width, 4 * units), width, rng
                )
                store.params[f"{name}/{direction}_recurrent"] = lecun_normal_init(
                    (units, 4 * units), units, rng
                )
                store.params[f"{name}/{direction}_bias"] = _lstm_bias(layer, rng)
        elif isinstance(layer, BatchNorm):
            store.params[f"{name}/gamma"] = np.ones(width)
            store.params[f"{name}/beta"] = np.zeros(width)
            store.buffers[f"{name}/running_mean"] = np.zeros(width)
            store.buffers[f"{name}/running_var"] = np.ones(width)
    store.optimizer = NadamState.zeros_like(store.params)
    return store


def _lstm_bias(layer: BiLSTM, rng: np.random.Generator) -> np.ndarray:
    units = layer.units
    bias = np.zeros(4 * units)
    if layer.memory_steps > 2:
        forget = np.log(rng.uniform(1.0, layer.memory_steps - 1.0, size=units))
        bias[units : 2 * units] = forget
        bias[:units] = -forget
    else:
        bias[units : 2 * units] = 1.0
    return bias


def sequence_steps(data: Any, time_stride: int) -> int:
    """Length of the strided sequence the network sees for ``data``."""
    if isinstance(data, EpochSet):
        return math.ceil(data.n_samples / time_stride)
    return int(np.shape(data)[1])


def network_input(spec: ModelSpec, data: Any) -> np.ndarray:
    """
    Turn an ``EpochSet`` (or an array) into the network's input tensor.

    Epoch sets become [trials x time x streams] keeping every
    ``spec.time_stride``-th sample.
    """
    if isinstance(data, EpochSet):
        if not spec.sequence_input:
            raise InvalidInputError("this model expects flat features, not epochs")
        x = data.data[:, :, :: spec.time_stride].transpose(0, 2, 1)
    else:
        x = np.asarray(data, dtype=np.float64)
    expected_ndim = 3 if spec.sequence_input else 2
    if x.ndim != expected_ndim or x.shape[-1] != spec.input_width:
        raise InvalidInputError(
            f"model expects input of rank {expected_ndim} and width {spec.input_width}, "
            f"got shape {x.shape}"
        )
    return np.ascontiguousarray(x, dtype=np.float64)


class ForwardResult(NamedTuple):
    probs: np.ndarray
    caches: list[Any]
    batch_stats: dict[str, tuple[np.ndarray, np.ndarray]]


def forward(
    spec: ModelSpec,
    store: ParamStore,
    x: np.ndarray,
    mode: str = "infer",
    rng: Optional[np.random.Generator] = None,
) -> ForwardResult:
    """
    Run the network.

    Train mode draws noise and dropout masks from ``rng`` in layer order and
    normalizes with batch statistics; infer mode is deterministic.

    Raises:
        TrainingDivergedError: A layer output is non-finite (epoch and batch 0)
    """
    params = store.params
    caches: list[Any] = []
    batch_stats: dict[str, tuple[np.ndarray, np.ndarray]] = {}
    h = x
    for name, layer in zip(spec.layer_names(), spec.layers):
        if isinstance(layer, GaussianNoise):
            h = F.gaussian_noise(h, layer.sigma, mode, rng)
            cache: Any = None
        elif isinstance(layer, (TimeDistributedDense, DensePooled)):
            h, cache = F.td_dense_forward(
                h, params[f"{name}/kernel"], params[f"{name}/bias"], layer.activation
            )
        elif isinstance(layer, BiLSTM):
            masks: list[Optional[np.ndarray]] = [None, None]
            if mode == "train" and layer.recurrent_dropout > 0.0:
                if rng is None:
                    raise InvalidInputError("train-mode recurrent dropout needs a random generator")
                masks = [
                    F.dropout_mask((h.shape[0], layer.units), layer.recurrent_dropout, rng)
                    for _ in range(2)
                ]
            h, cache = F.bilstm_forward(
                h,
                _direction(params, name, "fwd"),
                _direction(params, name, "bwd"),
                layer.return_sequences,
                masks[0],
                masks[1],
                layer.relu_cap,
            )
        elif isinstance(layer, BatchNorm):
            h, cache = F.batchnorm_forward(
                h,
                params[f"{name}/gamma"],
                params[f"{name}/beta"],
                mode,
                store.buffers[f"{name}/running_mean"],
                store.buffers[f"{name}/running_var"],
                layer.eps,
            )
            if mode == "train":
                batch_stats[name] = (cache[-2], cache[-1])
        elif isinstance(layer, Dropout):
            h, cache = F.dropout_forward(h, layer.rate, mode, rng)
        elif isinstance(layer, Output):
            W = params[f"{name}/kernel"]
            h, cache = softmax(h @ W + params[f"{name}/bias"]), (h, W)
        else:  # pragma: no cover
            raise InvalidInputError(f"unknown layer {layer!r}")
        if not np.all(np.isfinite(h)):
            raise TrainingDivergedError(layer=name, epoch=0, batch=0)
        caches.append(cache)
    return ForwardResult(h, caches, batch_stats)


def _direction(params: dict[str, np.ndarray], name: str, direction: str) -> dict[str, np.ndarray]:
    return {
        leaf: params[f"{name}/{direction}_{leaf}"] for leaf in ("kernel", "recurrent", "bias")
    }


def backward(
    spec: ModelSpec, store: ParamStore, caches: list[Any], d_logits: np.ndarray
) -> dict[str, np.ndarray]:
    """Gradients of every parameter given the loss gradient at the output logits."""
    grads: dict[str, np.ndarray] = {}
    dh = d_logits
    for name, layer, cache in reversed(list(zip(spec.layer_names(), spec.layers, caches))):
        if isinstance(layer, Output):
            h, W = cache
            grads[f"{name}/kernel"] = h.T @ dh
            grads[f"{name}/bias"] = dh.sum(axis=0)
            dh = dh @ W.T
            continue
        if isinstance(layer, GaussianNoise):
            continue
        if isinstance(layer, Dropout):
            dh = F.dropout_backward(dh, cache)
            continue
        if isinstance(layer, (TimeDistributedDense, DensePooled)):
            dh, layer_grads = F.td_dense_backward(dh, cache)
        elif isinstance(layer, BiLSTM):
            dh, layer_grads = F.bilstm_backward(dh, cache)
        else:
            dh, layer_grads = F.batchnorm_backward(dh, cache)
        for leaf, value in layer_grads.items():
            grads[f"{name}/{leaf}"] = value
    for name, value in store.params.items():
        if is_regularized(name):
            grads[name] = grads[name] + 2.0 * spec.l2 * value
    return grads


class BatchResult(NamedTuple):
    loss: float
    grads: dict[str, np.ndarray]
    probs: np.ndarray
    batch_stats: dict[str, tuple[np.ndarray, np.ndarray]]


def _as_rng(seed: Optional[int | np.random.Generator]) -> Optional[np.random.Generator]:
    if seed is None or isinstance(seed, np.random.Generator):
        return seed
    return make_rng(seed, RandomStream.DROPOUT)


def forward_backward(
    spec: ModelSpec,
    store: ParamStore,
    x: np.ndarray,
    labels: np.ndarray,
    mode: str = "train",
    seed: Optional[int | np.random.Generator] = None,
) -> BatchResult:
    """Loss, gradients, probabilities and batch-norm statistics for one batch."""
    result = forward(spec, store, x, mode, _as_rng(seed))
    targets = one_hot(labels, result.probs.shape[1])
    loss = loss_forward(result.probs, targets, store.kernels(), spec.l2)
    if not np.isfinite(loss):
        raise TrainingDivergedError(layer="loss", epoch=0, batch=0)
    grads = backward(spec, store, result.caches, softmax_cross_entropy_grad(result.probs, targets))
    return BatchResult(loss, grads, result.probs, result.batch_stats)


def model_loss(
    spec: ModelSpec,
    store: ParamStore,
    x: np.ndarray,
    labels: np.ndarray,
    mode: str = "train",
    seed: Optional[int | np.random.Generator] = None,
) -> float:
    probs = forward(spec, store, x, mode, _as_rng(seed)).probs
    return loss_forward(probs, one_hot(labels, probs.shape[1]), store.kernels(), spec.l2)


def model_gradients(
    spec: ModelSpec,
    store: ParamStore,
    x: np.ndarray,
    labels: np.ndarray,
    mode: str = "train",
    seed: Optional[int | np.random.Generator] = None,
) -> dict[str, np.ndarray]:
    """
    Exact reverse-mode gradients of the regularized loss.

    Passing the same integer ``seed`` reproduces the same noise and dropout
    draws, so the loss is a deterministic function of the parameters.
    """
    return forward_backward(spec, store, x, labels, mode, seed).grads


def apply_batch_stats(
    spec: ModelSpec, store: ParamStore, batch_stats: dict[str, tuple[np.ndarray, np.ndarray]]
) -> None:
    """Fold train-mode batch statistics into the running averages of ``store``."""
    for name, layer in zip(spec.layer_names(), spec.layers):
        if name not in batch_stats or not isinstance(layer, BatchNorm):
            continue
        mean, var = batch_stats[name]
        store.buffers[f"{name}/running_mean"], store.buffers[f"{name}/running_var"] = (
            F.update_running_stats(
                store.buffers[f"{name}/running_mean"],
                store.buffers[f"{name}/running_var"],
                mean,
                var,
                layer.momentum,
            )
        )


def predict(
    spec: ModelSpec, store: ParamStore, data: Any, batch_size: int = PREDICT_BATCH
) -> np.ndarray:
    """
    Class probabilities [n x 3] in inference mode.

    Args:
        spec: Network description
        store: Fitted parameters
        data: ``EpochSet`` or an array shaped like the network input
        batch_size: Rows per forward pass; the result does not depend on it
    """
    x = network_input(spec, data)
    if x.shape[0] == 0:
        return np.zeros((0, spec.layers[-1].units))
    chunks = [
        forward(spec, store, x[start : start + batch_size], "infer").probs
        for start in range(0, x.shape[0], batch_size)
    ]
    return np.concatenate(chunks, axis=0)


def penalty(spec: ModelSpec, store: ParamStore) -> float:
    return l2_penalty(store.kernels(), spec.l2)
