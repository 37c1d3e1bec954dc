"""Trial feature matrix."""

from typing import Any, Sequence

import numpy as np
from pydantic import field_validator, model_validator

from ..value_objects import ValueObject, frozen_array
from .recording import TaskLabel, labels_to_indices


class FeatureMatrix(ValueObject):
    """Trials x named features, one label per row."""

    values: np.ndarray
    feature_names: tuple[str, ...]
    labels: tuple[TaskLabel, ...]

    @field_validator("values", mode="before")
    @classmethod
    def _freeze_values(cls, value: Any) -> np.ndarray:
        return frozen_array(value)

    @model_validator(mode="after")
    def _check_layout(self) -> "FeatureMatrix":
        if self.values.ndim != 2:
            raise ValueError("values must be a 2-D matrix [n_trials x n_features]")
        if self.values.shape[1] != len(self.feature_names):
            raise ValueError(
                f"{self.values.shape[1]} feature columns but {len(self.feature_names)} names"
            )
        if self.values.shape[0] != len(self.labels):
            raise ValueError(f"{len(self.labels)} labels for {self.values.shape[0]} rows")
        if len(set(self.feature_names)) != len(self.feature_names):
            seen: set[str] = set()
            duplicates = sorted({n for n in self.feature_names if n in seen or seen.add(n)})
            raise ValueError(f"duplicate feature names: {duplicates[:5]}")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("feature values must be finite")
        return self

    @property
    def n_trials(self) -> int:
        return int(self.values.shape[0])

    @property
    def n_features(self) -> int:
        return int(self.values.shape[1])

    @property
    def label_indices(self) -> np.ndarray:
        return labels_to_indices(self.labels)

    def subset(self, indices: Sequence[int]) -> "FeatureMatrix":
        indices = np.asarray(indices, dtype=np.int64)
        return FeatureMatrix(
            values=self.values[indices],
            feature_names=self.feature_names,
            labels=tuple(self.labels[i] for i in indices),
        )

    @classmethod
    def concat(cls, parts: Sequence["FeatureMatrix"]) -> "FeatureMatrix":
        """Column-wise union of matrices over the same trials."""
        if not parts:
            raise ValueError("nothing to concatenate")
        labels = parts[0].labels
        for part in parts[1:]:
            if part.labels != labels:
                raise ValueError("feature matrices describe different trials")
        return cls(
            values=np.concatenate([part.values for part in parts], axis=1),
            feature_names=tuple(name for part in parts for name in part.feature_names),
            labels=labels,
        )
