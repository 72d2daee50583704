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

"""Min-max scaling to ``[0, 1]``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .models import DatasetValueError

if TYPE_CHECKING:
    from evoids.core.type_aliases import FloatArray

    from .models import Dataset

__all__ = ["MinMaxScaler", "scale_dataset"]


@dataclass(frozen=True, slots=True, eq=False)
class MinMaxScaler:
    """Per-column min-max parameters.

    Columns whose minimum equals their maximum map to 0.
    """

    mins: FloatArray
    maxs: FloatArray

    @classmethod
    def fit(cls, features: FloatArray) -> MinMaxScaler:
        """Learn column minima and maxima from `features`.

        Raises:
            DatasetValueError: If `features` has no rows.
        """
        matrix = np.asarray(features, dtype=np.float64)
        if matrix.ndim != 2 or matrix.shape[0] == 0:  # noqa: PLR2004
            msg = "cannot fit a scaler on an empty matrix"
            raise DatasetValueError(msg)
        return cls(mins=matrix.min(axis=0), maxs=matrix.max(axis=0))

    @property
    def ranges(self) -> FloatArray:
        """Per-column ``max - min``."""
        return self.maxs - self.mins

    def transform(self, features: FloatArray) -> FloatArray:
        """Scale `features`, clipping values outside the fitted range into ``[0, 1]``."""
        matrix = np.asarray(features, dtype=np.float64)
        if matrix.ndim != 2 or matrix.shape[1] != self.mins.size:  # noqa: PLR2004
            msg = f"scaler fitted on {self.mins.size} columns cannot transform shape {matrix.shape}"
            raise DatasetValueError(msg)
        ranges = np.broadcast_to(self.ranges, matrix.shape)
        scaled = np.zeros_like(matrix)
        np.divide(matrix - self.mins, ranges, out=scaled, where=ranges > 0)
        return np.clip(scaled, 0.0, 1.0)

    def params(self, names: tuple[str, ...]) -> dict[str, tuple[float, float]]:
        """Return ``{column: (min, max)}`` for provenance."""
        return {name: (float(low), float(high)) for name, low, high in zip(names, self.mins, self.maxs, strict=True)}


def scale_dataset(dataset: Dataset, scaler: MinMaxScaler | None = None) -> tuple[Dataset, MinMaxScaler]:
    """Scale `dataset`, fitting a scaler on it unless one is supplied.

    Args:
        dataset: Dataset to scale.
        scaler: Pre-fitted scaler (strict mode passes the train-split scaler).

    Returns:
        The scaled dataset and the scaler used.
    """
    fitted = scaler if scaler is not None else MinMaxScaler.fit(dataset.features)
    action = "min-max scaled" if scaler is None else "min-max scaled with a supplied scaler"
    scaled = dataset.with_features(
        fitted.transform(dataset.features),
        action=action,
        scaler_params=fitted.params(dataset.feature_names),
    )
    return scaled, fitted
