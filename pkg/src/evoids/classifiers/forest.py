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

"""Random forest of CART trees.

Tree `t` draws its bootstrap rows and per-split feature samples from
substream ``(seed, tag("forest"), t)``, so the ensemble is the same whatever
the number of worker threads. With bootstrap off and every feature eligible
no draws are made and each tree equals a plain CART fit.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, ClassVar

import numpy as np

from evoids.core.model_types import ClassifierKind, LogComponent
from evoids.logging import structured_extra
from evoids.seeding import stream, tag

from .base import TrainedModel
from .specs import resolve_subsample
from .tree import TreeArrays, build_tree

if TYPE_CHECKING:
    from evoids.core.type_aliases import FloatArray, IntArray

    from .specs import RfSpec

logger: logging.Logger = logging.getLogger("evoids.classifiers")

__all__ = ["ForestModel", "fit_forest"]


@dataclass(frozen=True, slots=True, kw_only=True)
class ForestModel(TrainedModel):
    """Majority vote over independently grown trees (ties to the lowest class id)."""

    kind: ClassVar[ClassifierKind] = ClassifierKind.RF

    trees: tuple[TreeArrays, ...]

    def _predict(self, features: FloatArray) -> IntArray:
        votes = np.zeros((features.shape[0], self.n_classes), dtype=np.int64)
        rows = np.arange(features.shape[0])
        for tree in self.trees:
            np.add.at(votes, (rows, tree.predict(features)), 1)
        return np.argmax(votes, axis=1)

    def state(self) -> dict[str, Any]:
        return {"trees": [tree.to_state() for tree in self.trees]}

    @classmethod
    def from_state(cls, state: dict[str, Any], *, n_features: int, n_classes: int, train_time: float) -> ForestModel:
        trees = tuple(TreeArrays.from_state(tree) for tree in state["trees"])
        if not trees:
            msg = "forest has no trees"
            raise ValueError(msg)
        return cls(n_features=n_features, n_classes=n_classes, train_time=train_time, trees=trees)


def fit_forest(
    spec: RfSpec,
    features: FloatArray,
    labels: IntArray,
    n_classes: int,
    *,
    seed: int,
    workers: int = 1,
) -> ForestModel:
    """Grow `spec.n_trees` trees, optionally on a thread pool.

    Args:
        spec: Forest hyperparameters; `spec.seed` overrides `seed` when set.
        features: ``(n, d)`` training matrix.
        labels: ``(n,)`` class ids.
        n_classes: Number of class ids.
        seed: Seed used when the spec does not pin one.
        workers: Threads growing trees concurrently.

    Returns:
        The fitted forest.
    """
    forest_seed = spec.seed if spec.seed is not None else seed
    max_features = resolve_subsample(spec.feature_subsample, features.shape[1])
    tree_spec = spec.tree_spec()
    n_rows = labels.size

    def grow(index: int) -> TreeArrays:
        rng = stream(forest_seed, tag("forest"), index)
        rows = rng.integers(0, n_rows, size=n_rows) if spec.bootstrap else None
        sample = features if rows is None else features[rows]
        targets = labels if rows is None else labels[rows]
        return build_tree(
            sample,
            targets,
            n_classes,
            max_depth=tree_spec.max_depth,
            min_samples_split=tree_spec.min_samples_split,
            min_samples_leaf=tree_spec.min_samples_leaf,
            max_features=max_features,
            rng=rng,
        )

    started = time.perf_counter()
    if workers > 1 and spec.n_trees > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            trees = tuple(executor.map(grow, range(spec.n_trees)))
    else:
        trees = tuple(grow(index) for index in range(spec.n_trees))
    logger.debug(
        "Grew %d trees",
        len(trees),
        extra=structured_extra(
            component=LogComponent.CLASSIFIER,
            seed=forest_seed,
            duration_ms=(time.perf_counter() - started) * 1000.0,
        ),
    )
    return ForestModel(n_features=features.shape[1], n_classes=n_classes, trees=trees)
