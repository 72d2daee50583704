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

"""Typed aliases used across evoids internals."""

from __future__ import annotations

from collections.abc import Callable
from typing import NewType, TypeAlias

import numpy as np
import numpy.typing as npt

FloatArray: TypeAlias = npt.NDArray[np.float64]
IntArray: TypeAlias = npt.NDArray[np.int64]
BoolArray: TypeAlias = npt.NDArray[np.bool_]

Objective: TypeAlias = Callable[[FloatArray], float]

FeatureName = NewType("FeatureName", str)
ClassName = NewType("ClassName", str)
DatasetName = NewType("DatasetName", str)
ModelName = NewType("ModelName", str)
ConfigDigest = NewType("ConfigDigest", str)

__all__ = [
    "BoolArray",
    "ClassName",
    "ConfigDigest",
    "DatasetName",
    "FeatureName",
    "FloatArray",
    "IntArray",
    "ModelName",
    "Objective",
]
