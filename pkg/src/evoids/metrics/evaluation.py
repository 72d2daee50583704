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

"""Scoring a trained model on held-out rows."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING

from evoids.classifiers.base import timed_predict
from evoids.core.model_types import Averaging, LogComponent
from evoids.logging import structured_extra

from .confusion import ConfusionMatrix, confusion_matrix
from .scores import Metrics, scores

if TYPE_CHECKING:
    from evoids.classifiers.base import TrainedModel
    from evoids.core.type_aliases import FloatArray, IntArray

logger: logging.Logger = logging.getLogger("evoids.metrics")

__all__ = ["evaluate", "evaluate_with_matrix"]


def evaluate_with_matrix(
    model: TrainedModel,
    features: FloatArray,
    labels: IntArray,
    *,
    averaging: Averaging = Averaging.MACRO,
) -> tuple[Metrics, ConfusionMatrix]:
    """Predict `features`, time the batch and score against `labels`.

    Args:
        model: Trained classifier; its `train_time` is copied into the result.
        features: Evaluation rows, as wide as the training matrix.
        labels: True class ids.
        averaging: Aggregate mode for the macro fields.

    Returns:
        The scores with both timings filled in, and the confusion matrix.

    Raises:
        FeatureWidthError: If `features` does not match the model width.
        MetricsError: If there are no evaluation rows.
    """
    predictions, test_time = timed_predict(model, features)
    cm = confusion_matrix(labels, predictions, model.n_classes)
    metrics = scores(cm, averaging).with_timings(train_time=model.train_time, test_time=test_time)
    logger.debug(
        "Scored %s on %d rows: accuracy %.4f",
        model.kind,
        cm.total,
        metrics.accuracy,
        extra=structured_extra(
            component=LogComponent.METRICS,
            model=str(model.kind),
            duration_ms=test_time * 1000.0,
        ),
    )
    return metrics, cm


def evaluate(
    model: TrainedModel,
    features: FloatArray,
    labels: IntArray,
    *,
    averaging: Averaging = Averaging.MACRO,
) -> Metrics:
    """Like `evaluate_with_matrix`, returning only the scores."""
    metrics, _ = evaluate_with_matrix(model, features, labels, averaging=averaging)
    return metrics
