"""Gaussian class blobs for classifier tests."""

import numpy as np
import pytest


def make_blobs(rng, n_per_class=20, n_features=5, spread=1.0, separation=3.0):
    labels = np.repeat(np.arange(3), n_per_class)
    centers = np.zeros((3, n_features))
    centers[np.arange(3), np.arange(3)] = separation
    X = centers[labels] + spread * rng.standard_normal((labels.size, n_features))
    return X, labels


@pytest.fixture
def blobs(rng):
    return make_blobs(rng)


@pytest.fixture
def blob_factory(rng):
    def build(**kwargs):
        return make_blobs(rng, **kwargs)

    return build
