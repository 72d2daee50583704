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

"""CLI-specific fixtures shared across unit tests."""

from __future__ import annotations

from typing import TYPE_CHECKING

import pytest

from evoids.data import save_dataset
from tests.fixtures.builders import build_blobs

if TYPE_CHECKING:
    from pathlib import Path


@pytest.fixture
def blob_cache(tmp_path: Path) -> Path:
    """Write a small, separable dataset cache for command tests.

    Returns:
        Path of the ``.npz`` cache holding 2 x 24 rows over 5 features.
    """
    return save_dataset(build_blobs(n_per_class=24, n_features=5, informative=2, seed=5), tmp_path / "cache" / "blobs")
