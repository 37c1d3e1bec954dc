"""
Optical density to hemoglobin conversion (modified Beer-Lambert law).

Per channel and sample the two wavelengths give a 2x2 system

    dOD(lambda) = (eps_HbO(lambda) * dHbO + eps_HbR(lambda) * dHbR) * d * DPF(lambda)

which is solved for (dHbO, dHbR).
"""

from importlib import resources
from pathlib import Path
from typing import Any, Optional

import numpy as np
from dotenv import dotenv_values
from pydantic import Field, field_validator, model_validator

from ..domain import (
    ConfigurationError,
    HemoSeries,
    Recording,
    SignalProcessingError,
    ValueObject,
    frozen_array,
    hemo_stream_names,
)
from ..observability import get_logger

logger = get_logger(__name__)

MBLL_KEYS = (
    "epsilon_hbo_lo",
    "epsilon_hbo_hi",
    "epsilon_hbr_lo",
    "epsilon_hbr_hi",
    "dpf_lo",
    "dpf_hi",
)


class MbllParams(ValueObject):
    """
    Extinction table, pathlength factors and source-detector distance.

    ``extinction[w][c]``: w = 0 low / 1 high wavelength, c = 0 HbO / 1 HbR, in 1/(mM*cm).
    """

    extinction: np.ndarray
    dpf_lo: float = Field(gt=0)
    dpf_hi: float = Field(gt=0)
    distance_cm: float = Field(default=3.0, gt=0)

    @field_validator("extinction", mode="before")
    @classmethod
    def _freeze_extinction(cls, value: Any) -> np.ndarray:
        return frozen_array(value)

    @model_validator(mode="after")
    def _check_extinction(self) -> "MbllParams":
        if self.extinction.shape != (2, 2):
            raise ValueError("extinction must be a 2x2 matrix [wavelength][chromophore]")
        if abs(np.linalg.det(self.extinction)) <= 1e-12:
            raise ValueError("extinction matrix is singular (|det| <= 1e-12)")
        return self

    def system_matrix(self, distance_cm: Optional[float] = None) -> np.ndarray:
        """dOD = M @ (dHbO, dHbR) for one channel."""
        d = self.distance_cm if distance_cm is None else distance_cm
        pathlength = np.array([d * self.dpf_lo, d * self.dpf_hi])
        return pathlength[:, None] * self.extinction


def load_mbll_constants(path: Optional[str | Path] = None, distance_cm: float = 3.0) -> MbllParams:
    """
    Read MBLL constants from a keyed text file.

    Args:
        path: ``key=value`` file; the packaged 760/850 nm table when omitted
        distance_cm: Default source-detector distance

    Returns:
        Validated MbllParams
    """
    if path is None:
        source = resources.files("fnirs_bci.resources").joinpath("mbll_760_850.env")
        with resources.as_file(source) as packaged:
            values = dotenv_values(packaged)
        origin = "packaged defaults"
    else:
        if not Path(path).is_file():
            raise ConfigurationError(f"MBLL constants file not found: {path}")
        values = dotenv_values(path)
        origin = str(path)

    missing = [key for key in MBLL_KEYS if values.get(key) in (None, "")]
    if missing:
        raise ConfigurationError(f"{origin}: missing MBLL keys {missing}")
    unknown = sorted(set(values) - set(MBLL_KEYS))
    if unknown:
        raise ConfigurationError(f"{origin}: unknown MBLL keys {unknown}")
    try:
        numbers = {key: float(values[key]) for key in MBLL_KEYS}
    except ValueError as exc:
        raise ConfigurationError(f"{origin}: non-numeric MBLL constant ({exc})") from exc

    return MbllParams(
        extinction=[
            [numbers["epsilon_hbo_lo"], numbers["epsilon_hbr_lo"]],
            [numbers["epsilon_hbo_hi"], numbers["epsilon_hbr_hi"]],
        ],
        dpf_lo=numbers["dpf_lo"],
        dpf_hi=numbers["dpf_hi"],
        distance_cm=distance_cm,
    )


def _channel_distances(rec: Recording, p: MbllParams, per_channel_distance: bool) -> np.ndarray:
    if per_channel_distance:
        return np.array([ch.source_detector_distance_mm / 10.0 for ch in rec.channels])
    return np.full(rec.n_channels, p.distance_cm)


def mbll_convert(rec: Recording, p: MbllParams, per_channel_distance: bool = False) -> HemoSeries:
    """
    Convert optical-density changes to HbO/HbR concentration changes (mM).

    Args:
        rec: Recording with two wavelengths per channel
        p: MBLL constants
        per_channel_distance: Take d from each channel's metadata instead of ``p.distance_cm``

    Returns:
        HemoSeries with streams ``chNN_HbO``, ``chNN_HbR`` per channel
    """
    if not np.all(np.isfinite(rec.samples)):
        raise SignalProcessingError("optical density contains non-finite values")

    od = rec.samples.reshape(rec.n_samples, rec.n_channels, 2)
    conc = np.empty_like(od)
    for index, distance in enumerate(_channel_distances(rec, p, per_channel_distance)):
        conc[:, index, :] = np.linalg.solve(p.system_matrix(distance), od[:, index, :].T).T

    return HemoSeries(
        fs=rec.fs,
        streams=conc.reshape(rec.n_samples, 2 * rec.n_channels),
        stream_names=hemo_stream_names([ch.name for ch in rec.channels]),
    )


def mbll_forward(
    conc: np.ndarray, p: MbllParams, distances_cm: Optional[np.ndarray] = None
) -> np.ndarray:
    """
    Forward model: concentration changes to optical-density changes.

    Args:
        conc: [n_samples x 2*n_channels], (HbO, HbR) per channel
        p: MBLL constants
        distances_cm: Per-channel distance; ``p.distance_cm`` for all when omitted

    Returns:
        dOD matrix of the same shape, (low, high) wavelength per channel
    """
    conc = np.asarray(conc, dtype=np.float64)
    n_samples, width = conc.shape
    n_channels = width // 2
    if distances_cm is None:
        distances_cm = np.full(n_channels, p.distance_cm)
    pairs = conc.reshape(n_samples, n_channels, 2)
    od = np.empty_like(pairs)
    for index in range(n_channels):
        od[:, index, :] = pairs[:, index, :] @ p.system_matrix(distances_cm[index]).T
    return od.reshape(n_samples, width)
