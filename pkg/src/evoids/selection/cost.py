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

"""Weighted wrapper cost of a feature mask.

The cost of a mask is

    w1 * (1 - accuracy) + w2 * FPR + w3 * FNR + w4 * (selected / total)

measured by training the classifier on the masked fitness-train rows and
scoring it on the masked validation rows. Multiclass FPR and FNR are the
averages of the one-vs-rest rates. K-fold validation sums the per-fold
confusion matrices before scoring, so the cost can always be recomputed from
the reported metrics.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Final, TypeAlias

import numpy as np

from evoids.classifiers import fit
from evoids.core.model_types import Averaging, ValidationProtocol
from evoids.data.split import stratified_folds, stratified_indices
from evoids.exceptions import EvoidsValidationError
from evoids.metrics import evaluate_with_matrix, scores

if TYPE_CHECKING:
    from evoids.classifiers import ClassifierSpec
    from evoids.core.type_aliases import IntArray
    from evoids.data.models import Dataset
    from evoids.metrics import ConfusionMatrix, Metrics

    from .mask import FeatureMask

__all__ = [
    "DEFAULT_HOLDOUT_RATIO",
    "MAX_FOLDS",
    "CostWeights",
    "FeatureSelectionError",
    "FsValidation",
    "Partition",
    "fitness_partitions",
    "fs_cost",
    "score_mask",
]

DEFAULT_HOLDOUT_RATIO: Final[float] = 0.75
MAX_FOLDS: Final[int] = 10

Partition: TypeAlias = "tuple[IntArray, IntArray]"


class FeatureSelectionError(EvoidsValidationError):
    """Raised when feature selection cannot be configured for a dataset."""

    def __init__(self, field_name: str, reason: str) -> None:
        """Initialise the error with the offending setting."""
        self.field_name = field_name
        self.reason = reason
        super().__init__(f"selection.{field_name} {reason}")


@dataclass(frozen=True, slots=True)
class CostWeights:
    """Weights of the cost terms.

    Attributes:
        w1: Weight of the error rate ``1 - accuracy``.
        w2: Weight of the false-positive rate.
        w3: Weight of the false-negative rate.
        w4: Weight of the selected-feature ratio (off by default).
    """

    w1: float = 1.0
    w2: float = 0.0
    w3: float = 0.0
    w4: float = 0.0

    def __post_init__(self) -> None:
        for name in ("w1", "w2", "w3", "w4"):
            value = getattr(self, name)
            if not np.isfinite(value) or value < 0.0:
                raise FeatureSelectionError(f"weights.{name}", f"must be a finite value >= 0 (got {value})")
        if self.w1 + self.w2 + self.w3 <= 0.0:
            raise FeatureSelectionError("weights", "w1 + w2 + w3 must be positive")

    def cost(self, metrics: Metrics, selected: int, total: int) -> float:
        """Evaluate the weighted cost for one mask."""
        return (
            self.w1 * (1.0 - metrics.accuracy)
            + self.w2 * metrics.fpr_macro
            + self.w3 * metrics.fnr_macro
            + self.w4 * (selected / total)
        )

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.w1, self.w2, self.w3, self.w4)


@dataclass(frozen=True, slots=True)
class FsValidation:
    """How fitness is measured on the training rows.

    Attributes:
        protocol: Single stratified holdout or stratified k-fold.
        holdout_ratio: Fitness-train share for the holdout protocol.
        folds: Fold count for the k-fold protocol.
    """

    protocol: ValidationProtocol = ValidationProtocol.HOLDOUT
    holdout_ratio: float = DEFAULT_HOLDOUT_RATIO
    folds: int = 5

    def __post_init__(self) -> None:
        if not 0.0 < self.holdout_ratio < 1.0:
            raise FeatureSelectionError("holdout_ratio", f"must lie in (0, 1) (got {self.holdout_ratio})")
        if not 2 <= self.folds <= MAX_FOLDS:  # noqa: PLR2004
            raise FeatureSelectionError("folds", f"must lie in [2, {MAX_FOLDS}] (got {self.folds})")


def fitness_partitions(train: Dataset, validation: FsValidation, seed: int) -> list[Partition]:
    """Return the ``(fit_rows, score_rows)`` pairs used to measure every mask.

    Raises:
        FeatureSelectionError: If fewer than two classes are present.
        StratificationError: If a present class has a single row.
    """
    present = np.unique(train.labels)
    if present.size < 2:  # noqa: PLR2004
        raise FeatureSelectionError("train", f"needs at least 2 classes (got {present.size})")
    if validation.protocol is ValidationProtocol.KFOLD:
        return stratified_folds(train.labels, train.class_names, validation.folds, seed)
    return [stratified_indices(train.labels, train.class_names, validation.holdout_ratio, seed)]


def score_mask(  # noqa: PLR0913
    mask: FeatureMask,
    train: Dataset,
    spec: ClassifierSpec,
    partitions: list[Partition],
    *,
    seed: int,
    averaging: Averaging = Averaging.MACRO,
) -> Metrics:
    """Train and score `spec` on each partition restricted to `mask`.

    Returns:
        Metrics of the summed confusion matrix, with summed timings.
    """
    if mask.size != train.n_features:
        msg = f"mask covers {mask.size} features but the dataset has {train.n_features}"
        raise FeatureSelectionError("mask", msg)
    columns = mask.indices
    matrices: list[ConfusionMatrix] = []
    runs: list[Metrics] = []
    for fit_rows, score_rows in partitions:
        model = fit(
            spec,
            train.features[np.ix_(fit_rows, columns)],
            train.labels[fit_rows],
            train.n_classes,
            seed=seed,
        )
        metrics, cm = evaluate_with_matrix(
            model,
            train.features[np.ix_(score_rows, columns)],
            train.labels[score_rows],
            averaging=averaging,
        )
        matrices.append(cm)
        runs.append(metrics)
    if not runs:
        raise FeatureSelectionError("validation", "produced no partitions")
    if len(runs) == 1:
        return runs[0]
    total = sum(matrices[1:], start=matrices[0])
    return scores(total, averaging).with_timings(
        train_time=sum(run.train_time for run in runs),
        test_time=sum(run.test_time for run in runs),
    )


def fs_cost(  # noqa: PLR0913
    mask: FeatureMask,
    train: Dataset,
    spec: ClassifierSpec,
    weights: CostWeights,
    inner_split_seed: int,
    *,
    validation: FsValidation | None = None,
    averaging: Averaging = Averaging.MACRO,
) -> tuple[float, Metrics]:
    """Cost of one mask together with the metrics it was computed from."""
    partitions = fitness_partitions(train, validation or FsValidation(), inner_split_seed)
    metrics = score_mask(mask, train, spec, partitions, seed=inner_split_seed, averaging=averaging)
    return weights.cost(metrics, mask.count, mask.size), metrics
