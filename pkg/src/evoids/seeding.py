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

"""Deterministic random substreams.

Every stochastic step in evoids (particle moves, bootstrap draws, SMO partner
choice, shuffles) draws from a generator keyed by a master seed plus a tuple
of integers naming the step. Parallel schedules therefore cannot change
results: the stream a worker consumes depends only on its key.
"""

from __future__ import annotations

import zlib
from typing import Final

import numpy as np

MAX_SEED: Final[int] = 2**64 - 1

__all__ = ["MAX_SEED", "derive_seed", "stream", "tag"]


def tag(label: str) -> int:
    """Map a textual step label to a stable 32-bit integer key.

    Args:
        label: Human-readable step name (for example ``"split"``).

    Returns:
        CRC32 of the UTF-8 label.
    """
    return zlib.crc32(label.encode("utf-8"))


def stream(seed: int, *key: int) -> np.random.Generator:
    """Return the generator for `(seed, *key)`.

    Args:
        seed: Master seed (unsigned 64-bit).
        *key: Non-negative integers identifying the consumer.

    Returns:
        A fresh PCG64-backed generator.
    """
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=key))


def derive_seed(seed: int, *key: int) -> int:
    """Derive an independent unsigned 64-bit seed from `(seed, *key)`.

    Args:
        seed: Master seed.
        *key: Non-negative integers identifying the consumer.

    Returns:
        Derived seed suitable for another `stream` call.
    """
    state = np.random.SeedSequence(entropy=seed, spawn_key=key).generate_state(1, dtype=np.uint64)
    return int(state[0])
