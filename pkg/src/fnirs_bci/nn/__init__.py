"""From-scratch recurrent network: layers, backpropagation, Nadam and training."""

from .activations import Activation, relu, selu, sigmoid, softmax
from .functional import (
    batchnorm_forward,
    bilstm_forward,
    dropout_forward,
    gaussian_noise,
    lstm_cell_forward,
    td_dense_forward,
)
from .grid_search import GridPoint, GridRow, GridSearchResult, grid_points, grid_search
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
    default_model_spec,
    dense_model_spec,
)
from .loss import loss_forward, one_hot
from .model import (
    ParamStore,
    build_params,
    forward,
    model_gradients,
    model_loss,
    network_input,
    predict,
    sequence_steps,
)
from .optim import NadamState, nadam_step
from .training import EpochRecord, TrainConfig, TrainReport, mini_batches, train

__all__ = [
    "Activation",
    "relu",
    "selu",
    "sigmoid",
    "softmax",
    "lecun_normal_init",
    "td_dense_forward",
    "lstm_cell_forward",
    "bilstm_forward",
    "batchnorm_forward",
    "dropout_forward",
    "gaussian_noise",
    "GaussianNoise",
    "TimeDistributedDense",
    "BiLSTM",
    "BatchNorm",
    "Dropout",
    "DensePooled",
    "Output",
    "ModelSpec",
    "default_model_spec",
    "dense_model_spec",
    "loss_forward",
    "one_hot",
    "ParamStore",
    "build_params",
    "forward",
    "model_gradients",
    "model_loss",
    "network_input",
    "predict",
    "sequence_steps",
    "NadamState",
    "nadam_step",
    "TrainConfig",
    "TrainReport",
    "EpochRecord",
    "mini_batches",
    "train",
    "GridPoint",
    "GridRow",
    "GridSearchResult",
    "grid_points",
    "grid_search",
]
