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

"""Exhaustive mask enumeration for small feature counts.

Used as a reference when judging how close the optimizer gets to the best
achievable cost; it scores every non-empty mask with the same partitions and
seed as `FeatureSelector`.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Final

import numpy as np

from evoids.core.model_types import Averaging

from .cost import FeatureSelectionError
from .mask import FeatureMask
from .wrapper import FeatureSelector

if TYPE_CHECKING:
    from evoids.classifiers import ClassifierSpec
    from evoids.data.models import Dataset

    from .cost import CostWeights, FsValidation

__all__ = ["MAX_EXHAUSTIVE_FEATURES", "enumerate_masks", "exhaustive_search"]

MAX_EXHAUSTIVE_FEATURES: Final[int] = 16


def enumerate_masks(n_features: int) -> list[FeatureMask]:
    """Every non-empty mask over `n_features` columns, in binary counting order."""
    if not 1 <= n_features <= MAX_EXHAUSTIVE_FEATURES:
        raise FeatureSelectionError(
            "n_features",
            f"must lie in [1, {MAX_EXHAUSTIVE_FEATURES}] for exhaustive search (got {n_features})",
        )
    columns = np.arange(n_features)
    return [FeatureMask(((code >> columns) & 1).astype(np.bool_)) for code in range(1, 2**n_features)]


def exhaustive_search(  # noqa: PLR0913
    train: Dataset,
    spec: ClassifierSpec,
    weights: CostWeights,
    *,
    inner_seed: int,
    validation: FsValidation | None = None,
    averaging: Averaging = Averaging.MACRO,
) -> list[tuple[FeatureMask, float]]:
    """Score every non-empty mask.

    Returns:
        ``(mask, cost)`` pairs sorted by cost; ties keep counting order.
    """
    selector = FeatureSelector(
        train,
        spec,
        weights,
        inner_seed=inner_seed,
        validation=validation,
        averaging=averaging,
    )
    scored = [(mask, selector.evaluate(mask)[0]) for mask in enumerate_masks(train.n_features)]
    return sorted(scored, key=lambda item: item[1])
