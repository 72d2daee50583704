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

"""Class balancing by downsampling."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Final, Literal

import numpy as np

from evoids.core.model_types import LogComponent
from evoids.exceptions import EvoidsValidationError
from evoids.logging import structured_extra
from evoids.seeding import stream, tag

from .models import EmptyDatasetError

if TYPE_CHECKING:
    from .models import Dataset

logger: logging.Logger = logging.getLogger("evoids.data")

__all__ = ["AUTO_CAP", "SamplingConfigError", "downsample", "resolve_cap"]

AUTO_CAP: Final[Literal["auto"]] = "auto"
_DOWNSAMPLE_TAG: Final[int] = tag("downsample")


class SamplingConfigError(EvoidsValidationError):
    """Raised when a sampling or split parameter is out of range."""

    def __init__(self, field_name: str, reason: str) -> None:
        """Initialise the error.

        Args:
            field_name: Parameter name.
            reason: Constraint that was violated.
        """
        self.field_name = field_name
        self.reason = reason
        super().__init__(f"{field_name} {reason}")


def resolve_cap(counts: dict[str, int], n_per_label: int | Literal["auto"] | None) -> int:
    """Return the per-class row cap.

    ``"auto"`` (or None) resolves to the smallest non-zero class count.

    Raises:
        SamplingConfigError: If an explicit cap is below 1.
    """
    if n_per_label is None or n_per_label == AUTO_CAP:
        return min(count for count in counts.values() if count > 0)
    if isinstance(n_per_label, bool) or not isinstance(n_per_label, int) or n_per_label < 1:
        raise SamplingConfigError("n_per_label", f"must be a positive integer or 'auto' (got {n_per_label!r})")
    return n_per_label


def downsample(dataset: Dataset, n_per_label: int | Literal["auto"] | None, seed: int) -> Dataset:
    """Keep at most `cap` rows per class, sampled without replacement, then shuffle.

    Args:
        dataset: Input dataset.
        n_per_label: Per-class cap, or ``"auto"`` for the minority-class count.
        seed: Master seed.

    Returns:
        The balanced, shuffled dataset.

    Raises:
        EmptyDatasetError: If `dataset` has no rows.
    """
    if dataset.n_rows == 0:
        stage = "downsample (input is empty)"
        raise EmptyDatasetError(stage)
    counts = dataset.class_counts()
    cap = resolve_cap(counts, n_per_label)
    rng = stream(seed, _DOWNSAMPLE_TAG)
    kept: list[np.ndarray] = []
    for class_id in range(dataset.n_classes):
        rows = np.flatnonzero(dataset.labels == class_id)
        if rows.size > cap:
            rows = np.sort(rng.choice(rows, size=cap, replace=False))
        kept.append(rows)
    order = rng.permutation(np.concatenate(kept))
    balanced = dataset.take(order, action=f"downsampled to at most {cap} row(s) per class")
    balanced.provenance.row_counts["balanced"] = balanced.n_rows
    logger.info(
        "Downsampled %d rows to %d (cap %d per class)",
        dataset.n_rows,
        balanced.n_rows,
        cap,
        extra=structured_extra(component=LogComponent.DATA, seed=seed, counts=balanced.class_counts()),
    )
    return balanced
