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

"""Property-based tests for Enums."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from evoids.core.model_types import Averaging, BenchFunction, ClassifierKind, DatasetKind, ImputationStrategy

pytestmark = pytest.mark.property

_PARSEABLE = (Averaging, BenchFunction, ClassifierKind, DatasetKind, ImputationStrategy)


@given(st.sampled_from(_PARSEABLE).flatmap(lambda enum: st.sampled_from(list(enum))), st.booleans())
def test_from_str_accepts_member_values_in_any_case(member: object, upper: bool) -> None:
    enum_type = type(member)
    raw = str(member).upper() if upper else f"  {member} "
    assert enum_type.from_str(raw) is member  # type: ignore[attr-defined]


@given(st.text(alphabet="xyz0123456789 ", min_size=1, max_size=12))
def test_from_str_rejects_unknown_names(noise: str) -> None:
    with pytest.raises(ValueError, match="Unknown classifier kind"):
        _ = ClassifierKind.from_str(noise)
