"""
Layer and network descriptions.

A ``ModelSpec`` is pure configuration: it names the layer sequence and its
hyper-parameters. Weights live in a ``ParamStore`` (see ``model.py``), keyed
by ``"<index:02d>_<kind>/<name>"``.
"""

from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..domain import InvalidInputError
from .activations import Activation

N_CLASSES = 3


class _LayerBase(BaseModel):
    model_config = ConfigDict(frozen=True)


class GaussianNoise(_LayerBase):
    kind: Literal["gaussian_noise"] = "gaussian_noise"
    sigma: float = Field(default=0.1, ge=0.0)


class TimeDistributedDense(_LayerBase):
    kind: Literal["td_dense"] = "td_dense"
    units: int = Field(ge=1)
    activation: Activation = Activation.SELU


class BiLSTM(_LayerBase):
    kind: Literal["bilstm"] = "bilstm"
    units: int = Field(ge=1)
    return_sequences: bool = True
    recurrent_dropout: float = Field(default=0.0, ge=0.0, lt=1.0)
    # ReLU ceiling for the candidate and cell output; None leaves them unbounded
    relu_cap: Optional[float] = Field(default=1.0, gt=0.0)
    # Expected dependency length; > 2 switches the gate biases to chrono init
    memory_steps: int = Field(default=0, ge=0)


class BatchNorm(_LayerBase):
    kind: Literal["batchnorm"] = "batchnorm"
    momentum: float = Field(default=0.99, ge=0.0, lt=1.0)
    eps: float = Field(default=1e-5, gt=0.0)


class Dropout(_LayerBase):
    kind: Literal["dropout"] = "dropout"
    rate: float = Field(default=0.1, ge=0.0, lt=1.0)


class DensePooled(_LayerBase):
    kind: Literal["dense"] = "dense"
    units: int = Field(ge=1)
    activation: Activation = Activation.SELU


class Output(_LayerBase):
    kind: Literal["output"] = "output"
    units: int = N_CLASSES


Layer = Annotated[
    Union[GaussianNoise, TimeDistributedDense, BiLSTM, BatchNorm, Dropout, DensePooled, Output],
    Field(discriminator="kind"),
]


class ModelSpec(BaseModel):
    """
    Ordered layer stack plus the L2 strength applied to kernels.

    ``input_width`` is the feature width of the input; ``sequence_input``
    says whether the input is [batch x time x feature] or [batch x feature].
    Epoch sets fed to a sequence model keep every ``time_stride``-th sample.
    """

    model_config = ConfigDict(frozen=True)

    input_width: int = Field(ge=1)
    sequence_input: bool = True
    layers: tuple[Layer, ...]
    l2: float = Field(default=0.1, ge=0.0)
    time_stride: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _check_shapes(self) -> "ModelSpec":
        self.layer_shapes()
        return self

    def layer_names(self) -> tuple[str, ...]:
        return tuple(f"{index:02d}_{layer.kind}" for index, layer in enumerate(self.layers))

    def layer_shapes(self) -> list[tuple[bool, int]]:
        """
        Propagate (is_sequence, width) through the stack.

        Returns:
            Input shape of every layer followed by the network output shape

        Raises:
            InvalidInputError: On an inconsistent stack
        """
        if not self.layers:
            raise InvalidInputError("a model needs at least one layer")
        outputs = [index for index, layer in enumerate(self.layers) if isinstance(layer, Output)]
        if outputs != [len(self.layers) - 1]:
            raise InvalidInputError("exactly one Output layer is required and it must be last")
        if self.layers[-1].units != N_CLASSES:
            raise InvalidInputError(f"output width must be {N_CLASSES}")

        shapes = [(self.sequence_input, self.input_width)]
        sequence, width = shapes[0]
        for index, layer in enumerate(self.layers):
            if isinstance(layer, TimeDistributedDense):
                if not sequence:
                    raise InvalidInputError(f"layer {index} (td_dense) needs a sequence input")
                width = layer.units
            elif isinstance(layer, BiLSTM):
                if not sequence:
                    raise InvalidInputError(f"layer {index} (bilstm) needs a sequence input")
                sequence, width = layer.return_sequences, 2 * layer.units
            elif isinstance(layer, (DensePooled, Output)):
                if sequence:
                    raise InvalidInputError(
                        f"layer {index} ({layer.kind}) needs a [batch x feature] input"
                    )
                width = layer.units
            shapes.append((sequence, width))
        return shapes


def default_model_spec(
    input_width: int,
    units: int = 32,
    dense_units: int = 16,
    dropout: float = 0.1,
    recurrent_dropout: float = 0.1,
    noise_sigma: float = 0.1,
    l2: float = 0.1,
    time_stride: int = 3,
    memory_steps: int = 0,
) -> ModelSpec:
    """
    Noise -> TD dense -> BiLSTM (sequences) -> batch norm -> BiLSTM (final
    state) -> dense -> dropout -> softmax output.

    ``memory_steps`` is the strided sequence length; pass it to draw the
    recurrent gate biases for that horizon.
    """
    return ModelSpec(
        input_width=input_width,
        layers=(
            GaussianNoise(sigma=noise_sigma),
            TimeDistributedDense(units=units, activation=Activation.SELU),
            BiLSTM(
                units=units,
                return_sequences=True,
                recurrent_dropout=recurrent_dropout,
                memory_steps=memory_steps,
            ),
            BatchNorm(),
            BiLSTM(
                units=units,
                return_sequences=False,
                recurrent_dropout=recurrent_dropout,
                memory_steps=memory_steps,
            ),
            DensePooled(units=dense_units, activation=Activation.SELU),
            Dropout(rate=dropout),
            Output(),
        ),
        l2=l2,
        time_stride=time_stride,
    )


def dense_model_spec(input_width: int, hidden: int = 32, l2: float = 0.1) -> ModelSpec:
    """Single hidden SELU layer on flat features."""
    return ModelSpec(
        input_width=input_width,
        sequence_input=False,
        layers=(DensePooled(units=hidden, activation=Activation.SELU), Output()),
        l2=l2,
    )
