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

"""Small shared helpers used across utils modules."""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Iterator

__all__ = ["chunk_bounds", "consume"]


def consume(value: object | None) -> None:
    """Explicitly mark a value as intentionally unused."""
    _ = value


def chunk_bounds(total: int, size: int) -> Iterator[tuple[int, int]]:
    """Yield `(start, stop)` pairs covering `range(total)` in blocks of `size`.

    Args:
        total: Number of items to cover.
        size: Maximum block length (values below 1 are treated as 1).

    Yields:
        Half-open index bounds in ascending order.
    """
    step = max(1, size)
    for start in range(0, total, step):
        yield start, min(total, start + step)
