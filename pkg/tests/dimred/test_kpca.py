"""Tests for kernel PCA."""

import numpy as np
import pytest

from fnirs_bci.domain import InvalidInputError
from fnirs_bci.dimred import Kernel, default_gamma, kpca_fit, kpca_fit_transform, kpca_transform


class TestKpca:
    """Tests for kpca_fit and kpca_transform."""

    def test_linear_kernel_matches_pca(self, rng):
        """Test that a linear kernel reproduces PCA scores up to sign."""
        X = rng.standard_normal((40, 6)) @ rng.standard_normal((6, 6))
        _, scores = kpca_fit_transform(X, Kernel.LINEAR, n_components=4)
        U, S, _ = np.linalg.svd(X - X.mean(axis=0), full_matrices=False)
        np.testing.assert_allclose(np.abs(scores), np.abs(U[:, :4] * S[:4]), atol=1e-8)

    def test_transform_reproduces_training_scores(self, rng):
        """Test that transforming training rows matches the fit."""
        X = rng.standard_normal((30, 5))
        model = kpca_fit(X, "rbf", n_components=6)
        alphas = model.alphas
        np.testing.assert_allclose(
            np.einsum("ij,ij->j", alphas, alphas) * model.eigenvalues, 1.0, rtol=1e-10
        )
        scores = kpca_transform(model, X)
        assert scores.shape == (30, 6)
        np.testing.assert_allclose(scores.mean(axis=0), 0.0, atol=1e-10)

    def test_default_gamma(self):
        """Test gamma = 1 / (n_features * mean variance)."""
        X = np.array([[0.0, 0.0], [2.0, 4.0]])
        assert default_gamma(X) == pytest.approx(1.0 / (2 * 2.5))

    def test_truncates_to_positive_spectrum(self, rng):
        """Test that a rank-2 linear kernel keeps only two components."""
        X = rng.standard_normal((10, 2))
        model = kpca_fit(X, Kernel.LINEAR, n_components=5)
        assert model.n_components == 2

    def test_component_bounds(self, rng):
        """Test that n_components must stay below the row count."""
        with pytest.raises(InvalidInputError):
            kpca_fit(rng.standard_normal((5, 3)), n_components=5)

    def test_feature_mismatch(self, rng):
        """Test that new rows must have the training width."""
        model = kpca_fit(rng.standard_normal((8, 3)), n_components=2)
        with pytest.raises(InvalidInputError, match="expects 3 features"):
            kpca_transform(model, np.zeros((1, 4)))


def _covariance_pca(X_train, X_new, k):
    """Scores of training and new rows on the leading covariance eigenvectors."""
    mean = X_train.mean(axis=0)
    centered = X_train - mean
    eigenvalues, vectors = np.linalg.eigh(centered.T @ centered / len(X_train))
    leading = vectors[:, np.argsort(eigenvalues)[::-1][:k]]
    return centered @ leading, (X_new - mean) @ leading


class TestLinearKpcaOracle:
    """Linear-kernel KPCA against covariance PCA on seeded matrices."""

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_covariance_pca(self, seed):
        """Test training and held-out scores against PCA up to sign."""
        rng = np.random.default_rng(seed)
        n = int(rng.integers(12, 51))
        d = int(rng.integers(3, 9))
        scales = np.linspace(3.0, 0.5, d)
        X = rng.standard_normal((n, d)) * scales
        X_new = rng.standard_normal((7, d)) * scales
        k = min(3, d)

        model, scores = kpca_fit_transform(X, Kernel.LINEAR, n_components=k)
        expected, expected_new = _covariance_pca(X, X_new, k)
        signs = np.sign(np.sum(scores * expected, axis=0))
        assert np.max(np.abs(scores * signs - expected)) < 1e-6
        assert np.max(np.abs(kpca_transform(model, X_new) * signs - expected_new)) < 1e-6

    @pytest.mark.parametrize("kernel", [Kernel.RBF, Kernel.LINEAR])
    def test_transform_of_training_rows(self, rng, kernel):
        """Test that transforming the training rows reproduces the eigenvector scores."""
        X = rng.standard_normal((35, 4))
        model = kpca_fit(X, kernel, n_components=3)
        fit_scores = model.alphas * model.eigenvalues[None, :]
        assert np.max(np.abs(kpca_transform(model, X) - fit_scores)) < 1e-8
