"""
Seeded synthetic fNIRS sessions.

A session is a random ordering of MA, MI and IS trials, each laid out as
introduction, task and rest blocks. Task blocks drive a hemodynamic response
(boxcar convolved with a difference of gamma densities) whose size depends
on the class and the channel group: the first half of the channels is the
"frontal" group, the second half the "motor" group. MI trials also carry
a task-locked oscillation with a random frequency and phase per trial, so
their window means average out across trials; a share of MI trials lapse and
carry no response at all. Concentrations are mapped to optical density with
the forward Beer-Lambert model, then cardiac, respiratory and Mayer
oscillations, a random-walk drift and white noise are added.
"""

import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy import stats

from ...domain import (
    CLASS_ORDER,
    Event,
    EventList,
    RandomStream,
    Recording,
    TaskLabel,
    default_channels,
    make_rng,
)
from ...signal.mbll import MbllParams, load_mbll_constants, mbll_forward

# Response kernel: peak gamma (mode 6 s), undershoot gamma, undershoot ratio.
HRF_PEAK_SHAPE = 7.0
HRF_UNDERSHOOT_SHAPE = 16.0
HRF_UNDERSHOOT_RATIO = 1.0 / 6.0
HRF_LENGTH_S = 32.0


class SynthConfig(BaseModel):
    """Parameters of a synthetic session. Amplitudes in mM, noise levels in ΔOD."""

    model_config = ConfigDict(frozen=True)

    seed: int = Field(default=0, ge=0, lt=2**64)
    n_trials_per_class: int = Field(default=30, ge=1)
    fs: float = Field(default=13.3, gt=0)
    n_channels: int = Field(default=16, ge=1)

    lead_in_s: float = Field(default=10.0, ge=5.0)
    intro_s: float = Field(default=2.0, ge=0)
    task_s: float = Field(default=10.0, gt=0)
    rest_s: float = Field(default=16.0, ge=0)
    rest_jitter_s: float = Field(default=2.0, ge=0)
    tail_s: float = Field(default=40.0, ge=25.0)

    amplitude_ma: float = Field(default=1.0e-3, ge=0)
    amplitude_mi: float = Field(default=0.03e-3, ge=0)
    amplitude_is: float = Field(default=0.0, ge=0)
    # (frontal, motor) channel-group weights per class
    weights_ma: tuple[float, float] = (1.0, 0.5)
    weights_mi: tuple[float, float] = (0.4, 1.0)
    weights_is: tuple[float, float] = (0.0, 0.0)
    amplitude_jitter: float = Field(default=0.15, ge=0)
    hbr_ratio: float = Field(default=1.0 / 3.0, ge=0)
    # MI task-locked oscillation on the MI channel weights (mM, Hz range)
    oscillation_mi: float = Field(default=0.6e-3, ge=0)
    oscillation_hz: tuple[float, float] = (0.04, 0.07)
    mi_lapse_rate: float = Field(default=0.15, ge=0, le=1)

    cardiac: float = Field(default=0.01, ge=0)
    respiratory: float = Field(default=0.005, ge=0)
    mayer: float = Field(default=0.002, ge=0)
    drift: float = Field(default=0.001, ge=0)
    white: float = Field(default=0.003, ge=0)

    @model_validator(mode="after")
    def _check_weights(self) -> "SynthConfig":
        for name in ("weights_ma", "weights_mi", "weights_is"):
            if min(getattr(self, name)) < 0:
                raise ValueError(f"{name} must be non-negative")
        low, high = self.oscillation_hz
        if not 0 < low <= high < self.fs / 2:
            raise ValueError("oscillation_hz must satisfy 0 < low <= high < fs / 2")
        return self

    def amplitude(self, label: TaskLabel) -> float:
        return {
            TaskLabel.MA: self.amplitude_ma,
            TaskLabel.MI: self.amplitude_mi,
            TaskLabel.IS: self.amplitude_is,
        }[label]

    def group_weights(self, label: TaskLabel) -> tuple[float, float]:
        return {
            TaskLabel.MA: self.weights_ma,
            TaskLabel.MI: self.weights_mi,
            TaskLabel.IS: self.weights_is,
        }[label]


def hrf_kernel(fs: float) -> np.ndarray:
    """Difference-of-gammas impulse response sampled at ``fs`` (unit peak)."""
    t = np.arange(0.0, HRF_LENGTH_S, 1.0 / fs)
    kernel = stats.gamma.pdf(t, HRF_PEAK_SHAPE) - HRF_UNDERSHOOT_RATIO * stats.gamma.pdf(
        t, HRF_UNDERSHOOT_SHAPE
    )
    return kernel / kernel.max()


def task_response(fs: float, task_s: float) -> np.ndarray:
    """Response to one task boxcar starting at sample 0, scaled to unit peak."""
    boxcar = np.ones(max(1, int(round(task_s * fs))))
    response = np.convolve(boxcar, hrf_kernel(fs))
    return response / np.abs(response).max()


def _channel_weights(cfg: SynthConfig, label: TaskLabel) -> np.ndarray:
    frontal, motor = cfg.group_weights(label)
    n_frontal = math.ceil(cfg.n_channels / 2)
    weights = np.full(cfg.n_channels, motor)
    weights[:n_frontal] = frontal
    return weights


def _layout(cfg: SynthConfig, rng: np.random.Generator) -> tuple[list[TaskLabel], np.ndarray]:
    labels = [label for label in CLASS_ORDER for _ in range(cfg.n_trials_per_class)]
    order = rng.permutation(len(labels))
    labels = [labels[i] for i in order]
    rests = cfg.rest_s + rng.uniform(0.0, cfg.rest_jitter_s, size=len(labels))
    onsets = np.empty(len(labels))
    block_start = cfg.lead_in_s
    for index in range(len(labels)):
        onsets[index] = block_start + cfg.intro_s
        block_start = onsets[index] + cfg.task_s + rests[index]
    # millisecond grid
    return labels, np.round(onsets, 3)


def generate_synthetic(
    cfg: SynthConfig, mbll: Optional[MbllParams] = None
) -> tuple[Recording, EventList]:
    """
    Generate a recording and its events.

    The output is a pure function of ``cfg`` (and the MBLL constants).

    Args:
        cfg: Session parameters
        mbll: Forward-model constants; the packaged defaults when omitted

    Returns:
        (Recording of ΔOD, EventList with one event per trial at task start)
    """
    mbll = mbll or load_mbll_constants()
    rng = make_rng(cfg.seed, RandomStream.SYNTH)
    labels, onsets = _layout(cfg, rng)

    n_samples = math.ceil((onsets[-1] + cfg.task_s + cfg.tail_s) * cfg.fs)
    t = np.arange(n_samples) / cfg.fs
    response = task_response(cfg.fs, cfg.task_s)

    channel_gain = np.clip(1.0 + 0.1 * rng.standard_normal(cfg.n_channels), 0.5, 1.5)
    trial_gain = np.clip(
        1.0 + cfg.amplitude_jitter * rng.standard_normal(len(labels)), 0.0, None
    )

    osc_freqs = rng.uniform(*cfg.oscillation_hz, size=len(labels))
    osc_phases = rng.uniform(0.0, 2.0 * np.pi, size=len(labels))
    lapsed = rng.random(len(labels)) < cfg.mi_lapse_rate
    task_t = np.arange(len(response)) / cfg.fs

    hbo = np.zeros((n_samples, cfg.n_channels))
    for index, (label, onset) in enumerate(zip(labels, onsets)):
        if label is TaskLabel.MI and lapsed[index]:
            continue
        waveform = cfg.amplitude(label) * response
        if label is TaskLabel.MI:
            carrier = np.sin(2.0 * np.pi * osc_freqs[index] * task_t + osc_phases[index])
            waveform = waveform + cfg.oscillation_mi * response * carrier
        waveform = waveform * trial_gain[index]
        if not waveform.any():
            continue
        start = int(math.floor(onset * cfg.fs + 0.5))
        stop = min(n_samples, start + len(response))
        weights = _channel_weights(cfg, label) * channel_gain
        hbo[start:stop] += waveform[: stop - start, None] * weights[None, :]
    hbr = -cfg.hbr_ratio * hbo

    conc = np.stack([hbo, hbr], axis=2).reshape(n_samples, 2 * cfg.n_channels)
    od = mbll_forward(conc, mbll)

    width = 2 * cfg.n_channels
    for amplitude, centre, spread in (
        (cfg.cardiac, 1.0, 0.05),
        (cfg.respiratory, 0.3, 0.02),
        (cfg.mayer, 0.1, 0.005),
    ):
        freqs = centre + spread * rng.standard_normal(width)
        phases = rng.uniform(0.0, 2.0 * np.pi, size=width)
        gains = amplitude * rng.uniform(0.5, 1.0, size=width)
        od += gains * np.sin(2.0 * np.pi * freqs * t[:, None] + phases)
    od += cfg.drift * np.cumsum(rng.standard_normal((n_samples, width)), axis=0) / math.sqrt(cfg.fs)
    od += cfg.white * rng.standard_normal((n_samples, width))

    events = EventList(
        events=tuple(
            Event(onset_s=float(onset), label=label) for label, onset in zip(labels, onsets)
        )
    )
    recording = Recording(fs=cfg.fs, channels=default_channels(cfg.n_channels), samples=od)
    return recording, events
