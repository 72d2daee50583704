# Copyright 2025 CrownOps Engineering
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Trained-model contract shared by every classifier family."""

from __future__ import annotations

import time
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, ClassVar

import numpy as np

from evoids.exceptions import EvoidsDataError, EvoidsValidationError

if TYPE_CHECKING:
    from evoids.core.model_types import ClassifierKind
    from evoids.core.type_aliases import FloatArray, IntArray

__all__ = [
    "EmptyTrainingSetError",
    "FeatureWidthError",
    "ModelFormatError",
    "TrainedModel",
    "check_training_data",
    "readonly",
    "timed_predict",
]


class EmptyTrainingSetError(EvoidsValidationError):
    """Raised when a classifier is asked to train on zero rows or zero features."""

    def __init__(self, rows: int, features: int) -> None:
        """Initialise the error with the rejected training shape."""
        self.rows = rows
        self.features = features
        super().__init__(f"Cannot train on an empty training set ({rows} rows x {features} features)")


class FeatureWidthError(EvoidsValidationError):
    """Raised when prediction input does not match the training feature width."""

    def __init__(self, expected: int, actual: int) -> None:
        """Initialise the error.

        Args:
            expected: Feature count the model was trained on.
            actual: Feature count supplied to `predict`.
        """
        self.expected = expected
        self.actual = actual
        super().__init__(f"Model expects {expected} features, got {actual}")


class ModelFormatError(EvoidsDataError):
    """Raised when a serialised model cannot be decoded."""

    def __init__(self, source: str, reason: str) -> None:
        """Initialise the error.

        Args:
            source: File path or description of the payload origin.
            reason: What was wrong with it.
        """
        self.source = source
        self.reason = reason
        super().__init__(f"Cannot load model from {source}: {reason}")


def readonly(array: np.ndarray[Any, Any]) -> np.ndarray[Any, Any]:
    """Return `array` with its write flag cleared."""
    array.setflags(write=False)
    return array


def check_training_data(features: FloatArray, labels: IntArray, n_classes: int) -> tuple[FloatArray, IntArray]:
    """Validate and normalise a training matrix and label vector.

    Returns:
        Read-only float64 features and int64 labels.

    Raises:
        EmptyTrainingSetError: If there are no rows or no feature columns.
        EvoidsValidationError: If shapes disagree, values are non-finite or
            labels fall outside ``[0, n_classes)``.
    """
    matrix = np.asarray(features, dtype=np.float64)
    targets = np.asarray(labels)
    if matrix.ndim != 2:  # noqa: PLR2004
        msg = f"training features must be a 2-D matrix (got {matrix.ndim} dimensions)"
        raise EvoidsValidationError(msg)
    if matrix.shape[0] == 0 or matrix.shape[1] == 0:
        raise EmptyTrainingSetError(matrix.shape[0], matrix.shape[1])
    if targets.shape != (matrix.shape[0],):
        msg = f"expected {matrix.shape[0]} labels, got shape {targets.shape}"
        raise EvoidsValidationError(msg)
    if not np.issubdtype(targets.dtype, np.integer):
        msg = f"labels must be integer class ids (got dtype {targets.dtype})"
        raise EvoidsValidationError(msg)
    if not np.all(np.isfinite(matrix)):
        msg = "training features must be finite"
        raise EvoidsValidationError(msg)
    if n_classes < 1 or targets.min() < 0 or targets.max() >= n_classes:
        msg = f"labels must lie in [0, {n_classes})"
        raise EvoidsValidationError(msg)
    return readonly(matrix.copy()), readonly(targets.astype(np.int64))


@dataclass(frozen=True, slots=True, kw_only=True)
class TrainedModel(ABC):
    """Immutable trained classifier.

    Subclasses hold only read-only arrays, so a model can be shared across
    threads and queried concurrently.

    Attributes:
        n_features: Feature width seen during training.
        n_classes: Number of class ids; predictions lie in ``[0, n_classes)``.
        train_time: Wall-clock training seconds.
    """

    kind: ClassVar[ClassifierKind]

    n_features: int
    n_classes: int
    train_time: float = 0.0

    @property
    def classes(self) -> tuple[int, ...]:
        """Class ids the model can emit."""
        return tuple(range(self.n_classes))

    def predict(self, features: FloatArray) -> IntArray:
        """Predict one class id per row of `features`.

        Raises:
            FeatureWidthError: If the column count differs from training.
        """
        matrix = np.asarray(features, dtype=np.float64)
        if matrix.ndim == 1:
            matrix = matrix.reshape(1, -1)
        if matrix.ndim != 2 or matrix.shape[1] != self.n_features:  # noqa: PLR2004
            raise FeatureWidthError(self.n_features, matrix.shape[-1] if matrix.ndim else 0)
        if matrix.shape[0] == 0:
            return np.zeros(0, dtype=np.int64)
        return self._predict(matrix).astype(np.int64, copy=False)

    @abstractmethod
    def _predict(self, features: FloatArray) -> IntArray:
        """Predict for a validated, non-empty matrix."""

    @abstractmethod
    def state(self) -> dict[str, Any]:
        """Return the JSON-compatible trained state."""

    @classmethod
    @abstractmethod
    def from_state(cls, state: dict[str, Any], *, n_features: int, n_classes: int, train_time: float) -> TrainedModel:
        """Rebuild a model from `state`.

        Raises:
            KeyError: If a state field is missing.
            ValueError: If a state field has the wrong shape.
        """


def timed_predict(model: TrainedModel, features: FloatArray) -> tuple[IntArray, float]:
    """Predict and return the wall-clock seconds spent."""
    started = time.perf_counter()
    predictions = model.predict(features)
    return predictions, time.perf_counter() - started
