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

"""Binary feature masks and the threshold encoding of optimizer positions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Final

import numpy as np

from evoids.exceptions import EvoidsValidationError

if TYPE_CHECKING:
    from collections.abc import Sequence

    from evoids.core.type_aliases import BoolArray, FloatArray, IntArray

__all__ = ["BINARIZE_THRESHOLD", "FeatureMask", "MaskError", "binarize"]

BINARIZE_THRESHOLD: Final[float] = 0.5


class MaskError(EvoidsValidationError):
    """Raised when a feature mask is empty or does not fit the dataset."""


@dataclass(frozen=True, slots=True, eq=False)
class FeatureMask:
    """Selected feature columns; at least one bit is always set."""

    bits: BoolArray

    def __post_init__(self) -> None:
        bits = np.array(self.bits, dtype=np.bool_)
        if bits.ndim != 1 or bits.size == 0:
            msg = f"feature mask must be a non-empty vector (got shape {bits.shape})"
            raise MaskError(msg)
        if not bits.any():
            msg = "feature mask must select at least one feature"
            raise MaskError(msg)
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_indices(cls, indices: Sequence[int] | IntArray, size: int) -> FeatureMask:
        """Build a mask of width `size` with the given columns selected."""
        bits = np.zeros(size, dtype=np.bool_)
        try:
            bits[np.asarray(indices, dtype=np.int64)] = True
        except IndexError as exc:
            msg = f"feature index out of range for {size} features"
            raise MaskError(msg) from exc
        return cls(bits)

    @classmethod
    def from_names(cls, names: Sequence[str], feature_names: Sequence[str]) -> FeatureMask:
        """Build a mask selecting `names` out of `feature_names`.

        Raises:
            MaskError: If a name is not a feature of the dataset.
        """
        lookup = {name: index for index, name in enumerate(feature_names)}
        missing = [name for name in names if name not in lookup]
        if missing:
            msg = f"unknown feature names: {', '.join(missing)}"
            raise MaskError(msg)
        return cls.from_indices([lookup[name] for name in names], len(feature_names))

    @property
    def size(self) -> int:
        return int(self.bits.size)

    @property
    def count(self) -> int:
        return int(np.count_nonzero(self.bits))

    @property
    def indices(self) -> IntArray:
        return np.flatnonzero(self.bits).astype(np.int64)

    @property
    def key(self) -> bytes:
        """Hashable identity of the bit pattern."""
        return np.packbits(self.bits).tobytes() + self.size.to_bytes(4, "little")

    def to_list(self) -> list[int]:
        return [int(bit) for bit in self.bits]

    def names(self, feature_names: Sequence[str]) -> list[str]:
        """Return the selected names in column order."""
        if len(feature_names) != self.size:
            msg = f"mask covers {self.size} features but {len(feature_names)} names were given"
            raise MaskError(msg)
        return [feature_names[index] for index in self.indices]

    def apply(self, features: FloatArray) -> FloatArray:
        """Return the selected columns of `features`."""
        if features.shape[1] != self.size:
            msg = f"mask covers {self.size} features but the matrix has {features.shape[1]}"
            raise MaskError(msg)
        return features[:, self.bits]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FeatureMask):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"FeatureMask({''.join(str(bit) for bit in self.to_list())})"


def binarize(position: FloatArray) -> FeatureMask:
    """Threshold a position in ``[0, 1]^d`` into a feature mask.

    Coordinates at or above `BINARIZE_THRESHOLD` select their feature. When no
    coordinate does, the feature at the largest coordinate (lowest index on
    ties) is selected alone.
    """
    values = np.asarray(position, dtype=np.float64)
    bits = values >= BINARIZE_THRESHOLD
    if values.size and not bits.any():
        bits[int(np.argmax(values))] = True
    return FeatureMask(bits)
