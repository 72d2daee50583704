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

"""Stratified train/test splits and folds."""

from __future__ import annotations

import math
from typing import TYPE_CHECKING, Final

import numpy as np

from evoids.seeding import stream, tag

from .balance import SamplingConfigError
from .models import SplitPair, StratificationError

if TYPE_CHECKING:
    from evoids.core.type_aliases import IntArray

    from .models import Dataset

__all__ = ["SPLIT_EPSILON", "split", "stratified_folds", "stratified_indices"]

SPLIT_EPSILON: Final[float] = 1e-9
_SPLIT_TAG: Final[int] = tag("split")
_FOLD_TAG: Final[int] = tag("folds")


def _class_rows(labels: IntArray, n_classes: int, class_names: tuple[str, ...]) -> list[IntArray]:
    groups: list[IntArray] = []
    for class_id in range(n_classes):
        rows = np.flatnonzero(labels == class_id)
        if rows.size == 0:
            continue
        if rows.size < 2:  # noqa: PLR2004
            raise StratificationError(class_names[class_id], int(rows.size))
        groups.append(rows)
    return groups


def stratified_indices(
    labels: IntArray,
    class_names: tuple[str, ...],
    ratio: float,
    seed: int,
) -> tuple[IntArray, IntArray]:
    """Return sorted train and test row indices for a stratified split.

    Each class is shuffled with its own substream; the first
    ``floor(ratio * count)`` rows (at least 1, at most ``count - 1``) go to train.

    Raises:
        SamplingConfigError: If `ratio` is outside ``(0, 1)``.
        StratificationError: If a present class has a single row.
    """
    if not 0.0 < ratio < 1.0:
        raise SamplingConfigError("ratio", f"must lie in (0, 1) (got {ratio})")
    train_parts: list[IntArray] = []
    test_parts: list[IntArray] = []
    for rows in _class_rows(labels, len(class_names), class_names):
        class_id = int(labels[rows[0]])
        shuffled = stream(seed, _SPLIT_TAG, class_id).permutation(rows)
        n_train = min(max(1, math.floor(ratio * rows.size + SPLIT_EPSILON)), rows.size - 1)
        train_parts.append(shuffled[:n_train])
        test_parts.append(shuffled[n_train:])
    return np.sort(np.concatenate(train_parts)), np.sort(np.concatenate(test_parts))


def split(dataset: Dataset, ratio: float, seed: int) -> SplitPair:
    """Split `dataset` into stratified train and test parts.

    Args:
        dataset: Dataset with at least two rows in every present class.
        ratio: Train share in ``(0, 1)``.
        seed: Master seed.

    Returns:
        The split, including the row indices of each side.
    """
    train_rows, test_rows = stratified_indices(dataset.labels, dataset.class_names, ratio, seed)
    return SplitPair(
        train=dataset.take(train_rows, action=f"train split ({ratio:g})"),
        test=dataset.take(test_rows, action=f"test split ({1 - ratio:g})"),
        ratio=ratio,
        seed=seed,
        train_rows=train_rows,
        test_rows=test_rows,
    )


def stratified_folds(
    labels: IntArray,
    class_names: tuple[str, ...],
    folds: int,
    seed: int,
) -> list[tuple[IntArray, IntArray]]:
    """Return ``(train, validation)`` index pairs for stratified k-fold validation.

    Rows of each class are shuffled and dealt to folds round-robin.

    Raises:
        SamplingConfigError: If `folds` is below 2.
        StratificationError: If a present class has a single row.
    """
    if folds < 2:  # noqa: PLR2004
        raise SamplingConfigError("folds", f"must be >= 2 (got {folds})")
    assignment = np.full(labels.shape[0], -1, dtype=np.int64)
    for rows in _class_rows(labels, len(class_names), class_names):
        class_id = int(labels[rows[0]])
        shuffled = stream(seed, _FOLD_TAG, class_id).permutation(rows)
        assignment[shuffled] = np.arange(shuffled.size) % folds
    everything = np.flatnonzero(assignment >= 0)
    pairs: list[tuple[IntArray, IntArray]] = []
    for fold in range(folds):
        held_out = everything[assignment[everything] == fold]
        if held_out.size == 0:
            continue
        pairs.append((everything[assignment[everything] != fold], held_out))
    return pairs
