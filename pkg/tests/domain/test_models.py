"""Tests for the domain value objects."""

import numpy as np
import pytest
from pydantic import ValidationError

from fnirs_bci.domain import (
    CLASS_ORDER,
    ChannelMeta,
    ConfusionMatrix,
    EpochSet,
    EventList,
    FeatureMatrix,
    Recording,
    TaskLabel,
    label_index,
    labels_to_indices,
)


class TestTaskLabels:
    """Tests for class order and label indices."""

    def test_class_order(self):
        """Test that MA, MI, IS is the table order."""
        assert CLASS_ORDER == (TaskLabel.MA, TaskLabel.MI, TaskLabel.IS)
        assert label_index("MI") == 1

    def test_labels_to_indices(self):
        """Test mapping a label sequence to indices."""
        assert labels_to_indices(["IS", "MA", "MI"]).tolist() == [2, 0, 1]

    def test_unknown_label(self):
        """Test that an unknown label is rejected."""
        with pytest.raises(ValueError):
            label_index("REST")


class TestRecording:
    """Tests for the Recording value object."""

    def test_layout_and_names(self):
        """Test column names and time axis."""
        rec = Recording(
            fs=10.0,
            channels=(ChannelMeta(id=1), ChannelMeta(id=2)),
            samples=np.zeros((5, 4)),
            t0=1.0,
        )
        assert rec.column_names == ["ch01_wl1", "ch01_wl2", "ch02_wl1", "ch02_wl2"]
        np.testing.assert_allclose(rec.times, [1.0, 1.1, 1.2, 1.3, 1.4])

    def test_samples_are_read_only(self):
        """Test that stored arrays cannot be mutated."""
        rec = Recording(fs=10.0, channels=(ChannelMeta(id=1),), samples=np.zeros((3, 2)))
        with pytest.raises(ValueError):
            rec.samples[0, 0] = 1.0

    def test_column_count_mismatch(self):
        """Test that two columns per channel are required."""
        with pytest.raises(ValidationError, match="expected 4"):
            Recording(
                fs=10.0, channels=(ChannelMeta(id=1), ChannelMeta(id=2)), samples=np.zeros((3, 3))
            )

    def test_non_finite_samples(self):
        """Test that NaN samples are rejected."""
        samples = np.zeros((3, 2))
        samples[1, 1] = np.nan
        with pytest.raises(ValidationError):
            Recording(fs=10.0, channels=(ChannelMeta(id=1),), samples=samples)

    def test_wavelength_order(self):
        """Test that the low wavelength must be below the high one."""
        with pytest.raises(ValidationError):
            ChannelMeta(id=1, wavelength_lo_nm=850.0, wavelength_hi_nm=760.0)


class TestEventList:
    """Tests for the EventList value object."""

    def test_from_pairs(self):
        """Test building events from (onset, label) pairs."""
        ev = EventList.from_pairs([(1.0, "MA"), (2.5, "IS")])
        assert len(ev) == 2
        assert ev.labels == (TaskLabel.MA, TaskLabel.IS)
        np.testing.assert_array_equal(ev.onsets, [1.0, 2.5])

    def test_onsets_strictly_increasing(self):
        """Test that repeated onsets are rejected."""
        with pytest.raises(ValidationError, match="strictly increasing"):
            EventList.from_pairs([(1.0, "MA"), (1.0, "MI")])


class TestEpochSet:
    """Tests for the EpochSet value object."""

    def test_window_must_match_samples(self):
        """Test that the sample count follows from the window and fs."""
        with pytest.raises(ValidationError, match="spans"):
            EpochSet(
                fs=4.0,
                labels=(TaskLabel.MA,),
                data=np.zeros((1, 1, 10)),
                stream_names=("s0",),
                epoch_window_s=(-1.0, 1.0),
            )

    def test_subset_and_times(self, epoch_factory):
        """Test trial subsets and the time axis."""
        es = epoch_factory(n_per_class=2)
        part = es.subset([5, 0])
        assert part.labels == (TaskLabel.IS, TaskLabel.MA)
        np.testing.assert_array_equal(part.data[1], es.data[0])
        assert es.times()[0] == pytest.approx(-1.0)
        assert es.index_of(0) == 4

    def test_with_data_replaces_streams(self, epoch_factory):
        """Test replacing the stream axis."""
        es = epoch_factory(n_per_class=1, n_streams=3)
        reduced = es.with_data(es.data[:, :2], ["a", "b"])
        assert reduced.n_streams == 2
        assert reduced.labels == es.labels


class TestFeatureMatrix:
    """Tests for the FeatureMatrix value object."""

    def test_duplicate_names(self):
        """Test that feature names must be unique."""
        with pytest.raises(ValidationError, match="duplicate"):
            FeatureMatrix(values=np.zeros((1, 2)), feature_names=("a", "a"), labels=("MA",))

    def test_concat(self):
        """Test column-wise concatenation."""
        a = FeatureMatrix(values=[[1.0], [2.0]], feature_names=("a",), labels=("MA", "MI"))
        b = FeatureMatrix(values=[[3.0], [4.0]], feature_names=("b",), labels=("MA", "MI"))
        both = FeatureMatrix.concat([a, b])
        assert both.feature_names == ("a", "b")
        np.testing.assert_array_equal(both.values, [[1.0, 3.0], [2.0, 4.0]])

    def test_concat_requires_same_trials(self):
        """Test that concatenation refuses different label sequences."""
        a = FeatureMatrix(values=[[1.0]], feature_names=("a",), labels=("MA",))
        b = FeatureMatrix(values=[[1.0]], feature_names=("b",), labels=("MI",))
        with pytest.raises(ValueError):
            FeatureMatrix.concat([a, b])


class TestConfusionMatrix:
    """Tests for the ConfusionMatrix value object."""

    def test_totals(self):
        """Test total and correct counts."""
        cm = ConfusionMatrix(counts=[[9, 1, 0], [2, 7, 1], [0, 1, 9]])
        assert cm.total == 30
        assert cm.correct == 25
        assert cm.row(TaskLabel.MI) == [2, 7, 1]

    def test_negative_counts(self):
        """Test that counts must be non-negative."""
        with pytest.raises(ValidationError):
            ConfusionMatrix(counts=[[1, 0, 0], [0, -1, 0], [0, 0, 1]])
