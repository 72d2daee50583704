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

"""Confusion-matrix construction."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from evoids.core.type_aliases import IntArray
from evoids.exceptions import EvoidsValidationError

if TYPE_CHECKING:
    from collections.abc import Sequence

__all__ = ["ConfusionMatrix", "LabelVectorError", "MetricsError", "confusion_matrix"]


class MetricsError(EvoidsValidationError):
    """Raised when scores cannot be derived from a confusion matrix."""


class LabelVectorError(MetricsError):
    """Raised when label vectors are mismatched or contain out-of-range ids."""

    def __init__(self, reason: str) -> None:
        """Initialise the error.

        Args:
            reason: Description of the problem with the label vectors.
        """
        self.reason = reason
        super().__init__(f"Invalid label vectors: {reason}")


@dataclass(frozen=True, slots=True, eq=False)
class ConfusionMatrix:
    """Square count matrix; rows are true classes and columns predicted classes."""

    counts: IntArray

    def __post_init__(self) -> None:
        counts = np.array(self.counts, dtype=np.int64)
        if counts.ndim != 2 or counts.shape[0] != counts.shape[1] or counts.shape[0] == 0:  # noqa: PLR2004
            msg = f"confusion matrix must be square and non-empty (got shape {counts.shape})"
            raise MetricsError(msg)
        if np.any(counts < 0):
            msg = "confusion matrix counts must be non-negative"
            raise MetricsError(msg)
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]]) -> ConfusionMatrix:
        """Rebuild a matrix stored as nested lists (the JSON form)."""
        return cls(np.asarray(rows, dtype=np.int64))

    @property
    def n_classes(self) -> int:
        """Number of classes."""
        return int(self.counts.shape[0])

    @property
    def total(self) -> int:
        """Number of evaluated samples."""
        return int(self.counts.sum())

    def __add__(self, other: ConfusionMatrix) -> ConfusionMatrix:
        """Sum two matrices over the same classes (used to pool k-fold results)."""
        if other.n_classes != self.n_classes:
            msg = f"cannot add confusion matrices over {self.n_classes} and {other.n_classes} classes"
            raise MetricsError(msg)
        return ConfusionMatrix(self.counts + other.counts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConfusionMatrix):
            return NotImplemented
        return bool(np.array_equal(self.counts, other.counts))

    def __hash__(self) -> int:
        return hash(self.counts.tobytes())

    def to_lists(self) -> list[list[int]]:
        """Return the counts as nested Python lists."""
        return [[int(value) for value in row] for row in self.counts]


def _as_label_vector(values: object, name: str) -> IntArray:
    array = np.asarray(values)
    if array.ndim != 1:
        msg = f"{name} must be one-dimensional"
        raise LabelVectorError(msg)
    if array.size and not np.issubdtype(array.dtype, np.integer):
        msg = f"{name} must hold integer class ids (got dtype {array.dtype})"
        raise LabelVectorError(msg)
    return array.astype(np.int64, copy=False)


def confusion_matrix(y_true: object, y_pred: object, n_classes: int) -> ConfusionMatrix:
    """Count (true, predicted) label pairs.

    Args:
        y_true: Integer true class ids.
        y_pred: Integer predicted class ids, aligned with `y_true`.
        n_classes: Number of classes; ids must lie in ``[0, n_classes)``.

    Returns:
        The confusion matrix. Empty inputs give an all-zero matrix.

    Raises:
        LabelVectorError: On a length mismatch or an out-of-range id.
    """
    if n_classes < 1:
        msg = f"n_classes must be >= 1 (got {n_classes})"
        raise LabelVectorError(msg)
    truth = _as_label_vector(y_true, "y_true")
    predicted = _as_label_vector(y_pred, "y_pred")
    if truth.shape != predicted.shape:
        msg = f"length mismatch ({truth.size} true vs {predicted.size} predicted)"
        raise LabelVectorError(msg)
    for name, vector in (("y_true", truth), ("y_pred", predicted)):
        if vector.size and (vector.min() < 0 or vector.max() >= n_classes):
            msg = f"{name} contains ids outside [0, {n_classes})"
            raise LabelVectorError(msg)
    flat = np.bincount(truth * n_classes + predicted, minlength=n_classes * n_classes)
    return ConfusionMatrix(flat.reshape(n_classes, n_classes))
