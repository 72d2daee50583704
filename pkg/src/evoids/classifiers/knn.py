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

"""Exact k-nearest-neighbours classifier."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, ClassVar, Final

import numpy as np

from evoids.core.model_types import ClassifierKind

from .base import TrainedModel, readonly

if TYPE_CHECKING:
    from evoids.core.type_aliases import FloatArray, IntArray

    from .specs import KnnSpec

__all__ = ["KnnModel", "fit_knn"]

# Upper bound on query x train x feature cells materialised per distance block.
_BLOCK_CELLS: Final[int] = 4_000_000


@dataclass(frozen=True, slots=True, kw_only=True)
class KnnModel(TrainedModel):
    """Stored training set queried by Euclidean distance.

    Distance ties go to the lower training index and vote ties to the lowest
    class id.
    """

    kind: ClassVar[ClassifierKind] = ClassifierKind.KNN

    k: int
    features: FloatArray
    labels: IntArray

    def _predict(self, features: FloatArray) -> IntArray:
        k = min(self.k, self.labels.size)
        rows_per_block = max(1, _BLOCK_CELLS // max(1, self.labels.size * self.n_features))
        predictions = np.empty(features.shape[0], dtype=np.int64)
        for start in range(0, features.shape[0], rows_per_block):
            block = features[start : start + rows_per_block]
            offsets = block[:, np.newaxis, :] - self.features[np.newaxis, :, :]
            distances = np.einsum("qnd,qnd->qn", offsets, offsets)
            nearest = np.argsort(distances, axis=1, kind="stable")[:, :k]
            votes = np.zeros((block.shape[0], self.n_classes), dtype=np.int64)
            rows = np.repeat(np.arange(block.shape[0]), k)
            np.add.at(votes, (rows, self.labels[nearest].ravel()), 1)
            predictions[start : start + block.shape[0]] = np.argmax(votes, axis=1)
        return predictions

    def state(self) -> dict[str, Any]:
        return {"k": self.k, "features": self.features.tolist(), "labels": self.labels.tolist()}

    @classmethod
    def from_state(cls, state: dict[str, Any], *, n_features: int, n_classes: int, train_time: float) -> KnnModel:
        features = np.asarray(state["features"], dtype=np.float64).reshape(-1, n_features)
        labels = np.asarray(state["labels"], dtype=np.int64)
        if labels.shape != (features.shape[0],):
            msg = "label count does not match stored rows"
            raise ValueError(msg)
        return cls(
            n_features=n_features,
            n_classes=n_classes,
            train_time=train_time,
            k=int(state["k"]),
            features=readonly(features),
            labels=readonly(labels),
        )


def fit_knn(spec: KnnSpec, features: FloatArray, labels: IntArray, n_classes: int) -> KnnModel:
    """Store the training data; validation happens in the registry."""
    return KnnModel(
        n_features=features.shape[1],
        n_classes=n_classes,
        k=spec.k,
        features=features,
        labels=labels,
    )
