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

"""Classifier registry and the uniform train entry point.

Each classifier family registers a `Trainer` keyed by `ClassifierKind`; `fit`
validates the training data once, dispatches on the spec's kind and stamps the
wall-clock training time onto the returned model.
"""

from __future__ import annotations

import dataclasses
import logging
import time
from functools import lru_cache
from typing import TYPE_CHECKING, Protocol

from evoids.core.model_types import ClassifierKind, LogComponent
from evoids.logging import structured_extra

from .base import check_training_data
from .forest import fit_forest
from .knn import fit_knn
from .svm import fit_svm
from .tree import fit_tree

if TYPE_CHECKING:
    from evoids.core.type_aliases import FloatArray, IntArray
    from evoids.data.models import Dataset

    from .base import TrainedModel
    from .specs import ClassifierSpec

logger: logging.Logger = logging.getLogger("evoids.classifiers")

__all__ = ["Trainer", "builtin_trainers", "fit", "resolve_trainer", "train"]


class Trainer(Protocol):
    """Callable that turns validated training arrays into a model."""

    def __call__(  # noqa: PLR0913
        self,
        spec: ClassifierSpec,
        features: FloatArray,
        labels: IntArray,
        n_classes: int,
        *,
        seed: int,
        workers: int,
    ) -> TrainedModel: ...


def _knn(
    spec: ClassifierSpec, features: FloatArray, labels: IntArray, n_classes: int, *, seed: int, workers: int
) -> TrainedModel:
    del seed, workers
    return fit_knn(spec, features, labels, n_classes)  # type: ignore[arg-type]


def _cart(
    spec: ClassifierSpec, features: FloatArray, labels: IntArray, n_classes: int, *, seed: int, workers: int
) -> TrainedModel:
    del workers
    return fit_tree(spec, features, labels, n_classes, seed=seed)  # type: ignore[arg-type]


def _rf(
    spec: ClassifierSpec, features: FloatArray, labels: IntArray, n_classes: int, *, seed: int, workers: int
) -> TrainedModel:
    return fit_forest(spec, features, labels, n_classes, seed=seed, workers=workers)  # type: ignore[arg-type]


def _svm(
    spec: ClassifierSpec, features: FloatArray, labels: IntArray, n_classes: int, *, seed: int, workers: int
) -> TrainedModel:
    del workers
    return fit_svm(spec, features, labels, n_classes, seed=seed)  # type: ignore[arg-type]


@lru_cache
def builtin_trainers() -> dict[ClassifierKind, Trainer]:
    """Return the trainer for every builtin classifier family."""
    return {
        ClassifierKind.KNN: _knn,
        ClassifierKind.CART: _cart,
        ClassifierKind.RF: _rf,
        ClassifierKind.SVM: _svm,
    }


def resolve_trainer(kind: ClassifierKind | str) -> Trainer:
    """Look up the trainer for `kind`.

    Raises:
        ValueError: If the kind is unknown.
    """
    resolved = kind if isinstance(kind, ClassifierKind) else ClassifierKind.from_str(kind)
    return builtin_trainers()[resolved]


def fit(  # noqa: PLR0913
    spec: ClassifierSpec,
    features: FloatArray,
    labels: IntArray,
    n_classes: int,
    *,
    seed: int = 0,
    workers: int = 1,
) -> TrainedModel:
    """Train a classifier on raw arrays.

    Args:
        spec: Validated hyperparameters; `spec.kind` selects the family.
        features: ``(n, d)`` finite training matrix.
        labels: ``(n,)`` class ids in ``[0, n_classes)``.
        n_classes: Number of class ids the model may predict.
        seed: Seed for stochastic families (RF, SVM, CART with `max_features`).
        workers: Threads available to families that parallelise (RF).

    Returns:
        The trained model with `train_time` set.

    Raises:
        EmptyTrainingSetError: If there are no rows or no features.
        EvoidsValidationError: If the arrays are malformed.
    """
    matrix, targets = check_training_data(features, labels, n_classes)
    trainer = resolve_trainer(spec.kind)
    started = time.perf_counter()
    model = trainer(spec, matrix, targets, n_classes, seed=seed, workers=workers)
    elapsed = time.perf_counter() - started
    logger.debug(
        "Trained %s on %d rows x %d features",
        spec.kind,
        matrix.shape[0],
        matrix.shape[1],
        extra=structured_extra(
            component=LogComponent.CLASSIFIER,
            model=str(spec.kind),
            seed=seed,
            duration_ms=elapsed * 1000.0,
        ),
    )
    return dataclasses.replace(model, train_time=elapsed)


def train(spec: ClassifierSpec, dataset: Dataset, *, seed: int = 0, workers: int = 1) -> TrainedModel:
    """Train a classifier on every row and feature of `dataset`."""
    return fit(spec, dataset.features, dataset.labels, dataset.n_classes, seed=seed, workers=workers)
