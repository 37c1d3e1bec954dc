"""Tests for Nadam, mini-batching, training schedules and grid search."""

import numpy as np
import pytest

from fnirs_bci.domain import InvalidInputError, TrainingDivergedError
from fnirs_bci.nn import (
    GridPoint,
    NadamState,
    TrainConfig,
    build_params,
    dense_model_spec,
    grid_points,
    grid_search,
    mini_batches,
    nadam_step,
    predict,
    train,
)


@pytest.fixture
def blobs(rng):
    """Three well separated Gaussian blobs in 4 dimensions, (train, val)."""

    def draw(n_per_class):
        centers = np.array([[3.0, 0, 0, 0], [0, 3.0, 0, 0], [0, 0, 3.0, 0]])
        labels = np.repeat(np.arange(3), n_per_class)
        x = centers[labels] + 0.5 * rng.standard_normal((labels.size, 4))
        return x, labels

    return draw(10), draw(5)


class TestNadam:
    """Tests for nadam_step."""

    def test_scalar_steps(self):
        """Test two steps against a hand-evaluated scalar recursion."""
        params = {"w": np.array([1.0])}
        state = NadamState.zeros_like(params)
        params, state = nadam_step(params, {"w": np.array([0.5])}, state, lr=0.1)
        # m = 0.05, n = 0.00025, m_hat = 0.045 / 0.19 + 0.05 / 0.1, n_hat = 0.25
        expected = 1.0 - 0.1 * (0.045 / 0.19 + 0.5) / (0.5 + 1e-8)
        assert params["w"][0] == pytest.approx(expected, abs=1e-12)

        params, state = nadam_step(params, {"w": np.array([-0.2])}, state, lr=0.1)
        m = 0.9 * 0.05 + 0.1 * -0.2
        n = 0.999 * 0.00025 + 0.001 * 0.04
        m_hat = 0.9 * m / (1 - 0.9**3) + 0.1 * -0.2 / (1 - 0.9**2)
        n_hat = n / (1 - 0.999**2)
        expected -= 0.1 * m_hat / (np.sqrt(n_hat) + 1e-8)
        assert params["w"][0] == pytest.approx(expected, abs=1e-12)
        assert state.t == 2

    def test_inputs_untouched(self):
        """Test that the step returns new arrays."""
        params = {"w": np.zeros(2)}
        state = NadamState.zeros_like(params)
        new_params, _ = nadam_step(params, {"w": np.ones(2)}, state, lr=0.1)
        assert not params["w"].any()
        assert new_params["w"][0] < 0.0

    def test_mismatched_gradients(self):
        """Test that gradients must cover the parameters."""
        with pytest.raises(ValueError):
            nadam_step({"w": np.zeros(1)}, {"v": np.zeros(1)}, NadamState(), lr=0.1)


class TestMiniBatches:
    """Tests for mini_batches."""

    def test_trailing_single_merged(self, rng):
        """Test that a trailing batch of one joins the previous batch."""
        batches = mini_batches(9, 4, rng)
        assert [len(batch) for batch in batches] == [4, 5]
        assert sorted(np.concatenate(batches)) == list(range(9))

    def test_even_split(self, rng):
        """Test equal batches when the size divides n."""
        assert [len(batch) for batch in mini_batches(8, 4, rng)] == [4, 4]


class TestTrain:
    """Tests for train."""

    def test_learns_blobs(self, blobs):
        """Test that a small dense network separates three blobs."""
        spec = dense_model_spec(4, hidden=8, l2=0.001)
        cfg = TrainConfig(lr=0.01, batch_size=5, max_epochs=60, seed=3)
        store, report = train(spec, blobs[0], blobs[1], cfg)
        x_val, y_val = blobs[1]
        accuracy = np.mean(np.argmax(predict(spec, store, x_val), axis=1) == y_val)
        assert accuracy >= 0.9
        assert report.checksum == store.checksum()
        assert report.best.val_loss <= report.epochs[0].val_loss

    def test_deterministic(self, blobs):
        """Test that the same seed reproduces the same parameters."""
        spec = dense_model_spec(4, hidden=4)
        cfg = TrainConfig(max_epochs=5, seed=8)
        first = train(spec, blobs[0], blobs[1], cfg)[1]
        second = train(spec, blobs[0], blobs[1], cfg)[1]
        assert first.checksum == second.checksum

    def test_plateau_and_early_stop(self, blobs):
        """Test the learning-rate schedule when validation loss never improves after epoch 1."""
        spec = dense_model_spec(4, hidden=4)
        cfg = TrainConfig(
            lr=1e-3,
            max_epochs=50,
            min_delta=100.0,
            early_stop_patience=6,
            plateau_patience=2,
            plateau_factor=0.5,
            min_lr=3e-4,
            seed=1,
        )
        _, report = train(spec, blobs[0], blobs[1], cfg)
        assert report.best_epoch == 1
        assert report.stopped_epoch == 7
        np.testing.assert_allclose(
            report.lr_trace, [1e-3, 1e-3, 1e-3, 5e-4, 5e-4, 3e-4, 3e-4], rtol=1e-12
        )

    def test_divergence_reported(self, blobs):
        """Test that an absurd learning rate raises with the epoch."""
        spec = dense_model_spec(4, hidden=4)
        cfg = TrainConfig(lr=1e300, max_epochs=3, seed=0)
        with np.errstate(all="ignore"), pytest.raises(TrainingDivergedError) as info:
            train(spec, blobs[0], blobs[1], cfg)
        assert info.value.epoch == 1

    def test_needs_validation(self, blobs):
        """Test that an empty validation set is rejected."""
        spec = dense_model_spec(4)
        empty = (np.zeros((0, 4)), np.zeros(0, dtype=int))
        with pytest.raises(InvalidInputError):
            train(spec, blobs[0], empty, TrainConfig(max_epochs=1))

    def test_initial_store_not_modified(self, blobs):
        """Test that warm starts copy their initial parameters."""
        spec = dense_model_spec(4, hidden=4)
        initial = build_params(spec, 0)
        before = initial.checksum()
        train(spec, blobs[0], blobs[1], TrainConfig(max_epochs=2), initial=initial)
        assert initial.checksum() == before


class TestGridSearch:
    """Tests for grid_search."""

    def _template(self, point, cfg):
        return dense_model_spec(4, hidden=point.units, l2=0.001)

    def test_grid_order(self):
        """Test the (lr, dropout, units) product order."""
        points = grid_points([0.1, 0.01], [0.0], [4, 8])
        assert points == [
            GridPoint(lr=0.1, dropout=0.0, units=4),
            GridPoint(lr=0.1, dropout=0.0, units=8),
            GridPoint(lr=0.01, dropout=0.0, units=4),
            GridPoint(lr=0.01, dropout=0.0, units=8),
        ]

    def test_selects_lowest_error_with_tie_breaks(self, blobs):
        """Test that the winner minimizes (error, units, -dropout, lr)."""
        grid = {"lr": [0.01, 0.02], "dropout": [0.0, 0.2], "units": [4, 8]}
        result = grid_search(self._template, grid, blobs, TrainConfig(max_epochs=15, seed=2))
        assert len(result.table) == 8
        ranked = min(
            result.table,
            key=lambda row: (row.val_error, row.point.units, -row.point.dropout, row.point.lr),
        )
        assert result.best == ranked.point
        assert result.best_report is not None
        assert len({row.seed for row in result.table}) == 8

    def test_diverged_cells_lose(self, blobs):
        """Test that a diverging cell is recorded and skipped."""
        grid = {"lr": [1e300, 0.01], "dropout": [0.0], "units": [4]}
        with np.errstate(all="ignore"):
            result = grid_search(self._template, grid, blobs, TrainConfig(max_epochs=5))
        assert result.table[0].diverged
        assert result.table[0].val_error == 1.0
        assert result.best.lr == 0.01

    def test_empty_axis(self, blobs):
        """Test that every axis needs a value."""
        with pytest.raises(InvalidInputError):
            grid_search(self._template, {"lr": [0.1], "units": [4]}, blobs, TrainConfig())
