"""Shared fixtures: seeded generators and small synthetic sessions."""

import numpy as np
import pytest

from fnirs_bci.domain import CLASS_ORDER, EpochSet, TaskLabel
from fnirs_bci.infrastructure.io import SynthConfig, generate_synthetic
from fnirs_bci.signal import (
    bandpass_hemo,
    baseline_correct,
    design_butterworth_bandpass,
    load_mbll_constants,
    mbll_convert,
    segment_epochs,
)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240917)


@pytest.fixture(scope="session")
def mbll_params():
    return load_mbll_constants()


@pytest.fixture(scope="session")
def small_synth_config() -> SynthConfig:
    return SynthConfig(seed=7, n_trials_per_class=6, n_channels=4)


@pytest.fixture(scope="session")
def small_session(small_synth_config, mbll_params):
    """(Recording, EventList) with 18 trials on 4 channels."""
    return generate_synthetic(small_synth_config, mbll_params)


@pytest.fixture(scope="session")
def small_epochs(small_session, mbll_params) -> EpochSet:
    rec, ev = small_session
    hemo = mbll_convert(rec, mbll_params)
    hemo = bandpass_hemo(hemo, design_butterworth_bandpass(3, 0.01, 0.09, rec.fs))
    return baseline_correct(segment_epochs(hemo, ev))


def make_epoch_set(
    rng: np.random.Generator,
    n_per_class: int = 4,
    n_streams: int = 3,
    n_samples: int = 40,
    fs: float = 4.0,
) -> EpochSet:
    """Random epochs with a class-dependent offset on the first stream."""
    labels = [label for label in CLASS_ORDER for _ in range(n_per_class)]
    data = rng.standard_normal((len(labels), n_streams, n_samples))
    for index, label in enumerate(labels):
        data[index, 0] += {TaskLabel.MA: 2.0, TaskLabel.MI: 0.0, TaskLabel.IS: -2.0}[label]
    start = -1.0
    return EpochSet(
        fs=fs,
        labels=tuple(labels),
        data=data,
        stream_names=tuple(f"s{i}" for i in range(n_streams)),
        epoch_window_s=(start, start + (n_samples - 1) / fs),
    )


@pytest.fixture
def epoch_factory(rng):
    def build(**kwargs) -> EpochSet:
        return make_epoch_set(rng, **kwargs)

    return build
