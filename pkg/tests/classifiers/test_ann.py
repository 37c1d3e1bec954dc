"""Tests for the single-hidden-layer network baseline."""

import numpy as np

from fnirs_bci.classifiers import AnnConfig, ann_baseline_fit
from fnirs_bci.nn import TrainConfig


class TestAnnBaseline:
    """Tests for ann_baseline_fit."""

    def test_separates_blobs(self, blobs):
        """Test that the network fits separated classes."""
        X, y = blobs
        model = ann_baseline_fit(X, y, AnnConfig(hidden=8, seed=1))
        assert np.mean(model.predict(X) == y) >= 0.9
        assert model.predict_proba(X).shape == (len(y), 3)

    def test_holdout_stratified(self, blobs):
        """Test that validation rows are held out from training."""
        X, y = blobs
        cfg = AnnConfig(hidden=4, val_fraction=0.25, training=TrainConfig(max_epochs=2))
        model = ann_baseline_fit(X, y, cfg)
        assert model.report.stopped_epoch <= 2
        assert len(model.report.epochs) >= 1

    def test_seeded(self, blobs):
        """Test that fitting is reproducible."""
        X, y = blobs
        cfg = AnnConfig(hidden=4, training=TrainConfig(max_epochs=3), seed=6)
        assert ann_baseline_fit(X, y, cfg).report.checksum == (
            ann_baseline_fit(X, y, cfg).report.checksum
        )
