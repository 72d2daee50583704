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

"""Wrapper feature selection: masks, cost and the optimizer-driven search."""

from __future__ import annotations

from .cost import CostWeights, FeatureSelectionError, FsValidation, fitness_partitions, fs_cost, score_mask
from .mask import BINARIZE_THRESHOLD, FeatureMask, MaskError, binarize
from .oracle import MAX_EXHAUSTIVE_FEATURES, enumerate_masks, exhaustive_search
from .wrapper import (
    FeatureSelector,
    FsDocument,
    FsResult,
    FsResultFormatError,
    MaskCacheStats,
    default_inner_seed,
    load_fs_result,
    select_features,
    write_fs_result,
)

__all__ = [
    "BINARIZE_THRESHOLD",
    "MAX_EXHAUSTIVE_FEATURES",
    "CostWeights",
    "FeatureMask",
    "FeatureSelectionError",
    "FeatureSelector",
    "FsDocument",
    "FsResult",
    "FsResultFormatError",
    "FsValidation",
    "MaskCacheStats",
    "MaskError",
    "binarize",
    "default_inner_seed",
    "enumerate_masks",
    "exhaustive_search",
    "fitness_partitions",
    "fs_cost",
    "load_fs_result",
    "score_mask",
    "select_features",
    "write_fs_result",
]
