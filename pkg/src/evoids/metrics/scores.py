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

"""Evaluation scores derived from a confusion matrix.

Every ratio uses the convention ``0 / 0 = 0`` so scores are total functions:
a class that is never predicted has precision 0, and a class absent from the
truth vector has recall 0.

Aggregates follow the requested `Averaging` mode. ``macro`` is the unweighted
mean over classes, ``weighted`` weights each class by its true-class support,
and ``binary`` reports the scores of class id 1 for two-class problems.
"""

from __future__ import annotations

from typing import ClassVar, Final

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from evoids.core.model_types import Averaging
from evoids.core.type_aliases import FloatArray

from .confusion import ConfusionMatrix, MetricsError

__all__ = ["BINARY_POSITIVE_CLASS", "ClassScores", "Metrics", "f1_score", "scores"]

BINARY_POSITIVE_CLASS: Final[int] = 1


class ClassScores(BaseModel):
    """One-vs-rest counts and scores for a single class."""

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True, extra="forbid")

    class_id: int
    support: int
    tp: int
    tn: int
    fp: int
    fn: int
    precision: float
    recall: float
    f1: float
    fpr: float
    fnr: float


class Metrics(BaseModel):
    """Aggregate evaluation scores, per-class breakdown and timings.

    The ``*_macro`` fields carry the aggregate selected by `averaging`; their
    names stay fixed so reports keep one schema across averaging modes.
    """

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True, extra="forbid")

    accuracy: float = Field(ge=0.0, le=1.0)
    precision_macro: float = Field(ge=0.0, le=1.0)
    recall_macro: float = Field(ge=0.0, le=1.0)
    f1_macro: float = Field(ge=0.0, le=1.0)
    fpr_macro: float = Field(ge=0.0, le=1.0)
    fnr_macro: float = Field(ge=0.0, le=1.0)
    averaging: Averaging = Averaging.MACRO
    per_class: list[ClassScores]
    confusion_matrix: list[list[int]]
    train_time: float = Field(default=0.0, ge=0.0)
    test_time: float = Field(default=0.0, ge=0.0)

    def with_timings(self, *, train_time: float | None = None, test_time: float | None = None) -> Metrics:
        """Return a copy with the given wall-clock timings filled in."""
        update: dict[str, float] = {}
        if train_time is not None:
            update["train_time"] = float(train_time)
        if test_time is not None:
            update["test_time"] = float(test_time)
        return self.model_copy(update=update)


def _ratio(numerator: FloatArray, denominator: FloatArray) -> FloatArray:
    out = np.zeros_like(numerator, dtype=np.float64)
    np.divide(numerator, denominator, out=out, where=denominator > 0)
    return out


def f1_score(precision: float, recall: float) -> float:
    """Harmonic mean of precision and recall, 0 when both are 0."""
    denominator = precision + recall
    if denominator <= 0.0:
        return 0.0
    return 2.0 * precision * recall / denominator


def _aggregate(values: FloatArray, support: FloatArray, averaging: Averaging) -> float:
    match averaging:
        case Averaging.BINARY:
            return float(values[BINARY_POSITIVE_CLASS])
        case Averaging.WEIGHTED:
            total = float(support.sum())
            return float(np.dot(values, support) / total) if total > 0 else 0.0
        case _:
            return float(values.mean())


def scores(cm: ConfusionMatrix, averaging: Averaging = Averaging.MACRO) -> Metrics:
    """Compute accuracy, precision, recall, F1, FPR and FNR from `cm`.

    Args:
        cm: Confusion matrix with at least one sample.
        averaging: How per-class scores are folded into the aggregates.

    Returns:
        Scores with zero timings; see `Metrics.with_timings`.

    Raises:
        MetricsError: If the matrix is empty, or binary averaging is requested
            for a problem that does not have exactly two classes.
    """
    total = cm.total
    if total == 0:
        msg = "cannot score a confusion matrix with zero samples"
        raise MetricsError(msg)
    if averaging is Averaging.BINARY and cm.n_classes != 2:  # noqa: PLR2004
        msg = f"binary averaging requires exactly 2 classes (got {cm.n_classes})"
        raise MetricsError(msg)

    counts = cm.counts.astype(np.float64)
    tp = np.diag(counts)
    fp = counts.sum(axis=0) - tp
    fn = counts.sum(axis=1) - tp
    tn = total - tp - fp - fn
    support = tp + fn

    precision = _ratio(tp, tp + fp)
    recall = _ratio(tp, tp + fn)
    f1 = _ratio(2.0 * precision * recall, precision + recall)
    fpr = _ratio(fp, fp + tn)
    fnr = _ratio(fn, fn + tp)

    per_class = [
        ClassScores(
            class_id=index,
            support=int(support[index]),
            tp=int(tp[index]),
            tn=int(tn[index]),
            fp=int(fp[index]),
            fn=int(fn[index]),
            precision=float(precision[index]),
            recall=float(recall[index]),
            f1=float(f1[index]),
            fpr=float(fpr[index]),
            fnr=float(fnr[index]),
        )
        for index in range(cm.n_classes)
    ]
    return Metrics(
        accuracy=float(np.trace(counts) / total),
        precision_macro=_aggregate(precision, support, averaging),
        recall_macro=_aggregate(recall, support, averaging),
        f1_macro=_aggregate(f1, support, averaging),
        fpr_macro=_aggregate(fpr, support, averaging),
        fnr_macro=_aggregate(fnr, support, averaging),
        averaging=averaging,
        per_class=per_class,
        confusion_matrix=cm.to_lists(),
    )
