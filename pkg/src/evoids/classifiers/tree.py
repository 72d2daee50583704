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

"""Gini-impurity CART decision tree.

Trees are grown depth-first from an explicit stack and stored as flat
parallel arrays (one entry per node), which keeps prediction vectorised and
makes the serialised form a handful of integer and float lists.

Split search is exhaustive over the candidate features: rows are sorted once
per feature, class counts are accumulated left to right, and every boundary
between distinct values is scored. Minimising the weighted child Gini is the
same as maximising ``sum(c_left**2) / n_left + sum(c_right**2) / n_right``.
Ties go to the lowest feature index, then the lowest threshold.

Impurity never increases in the weighted sense: for every split node,
``(n_left * gini_left + n_right * gini_right) / n`` is at most the node's own
Gini. A single child can still be less pure than its parent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, ClassVar

import numpy as np

from evoids.core.model_types import ClassifierKind
from evoids.seeding import stream, tag

from .base import TrainedModel, readonly

if TYPE_CHECKING:
    from evoids.core.type_aliases import FloatArray, IntArray

    from .specs import CartSpec

__all__ = ["LEAF", "TreeArrays", "TreeModel", "build_tree", "fit_tree", "gini"]

LEAF = -1


def gini(counts: IntArray) -> float:
    """Gini impurity of a class-count vector; 0 for an empty node."""
    total = int(np.sum(counts))
    if total == 0:
        return 0.0
    proportions = np.asarray(counts, dtype=np.float64) / total
    return float(1.0 - np.dot(proportions, proportions))


@dataclass(frozen=True, slots=True)
class TreeArrays:
    """Flat node storage of one fitted tree.

    Attributes:
        feature: Split feature per node, `LEAF` for leaves.
        threshold: Split threshold; rows with ``x <= threshold`` go left.
        left: Left child index (unused for leaves).
        right: Right child index (unused for leaves).
        value: Majority class id of the node's training rows.
        impurity: Gini impurity of the node's training rows.
        n_samples: Training rows reaching the node.
        depth: Node depth, 0 at the root.
    """

    feature: IntArray
    threshold: FloatArray
    left: IntArray
    right: IntArray
    value: IntArray
    impurity: FloatArray
    n_samples: IntArray
    depth: IntArray

    @property
    def node_count(self) -> int:
        return int(self.feature.size)

    @property
    def max_depth(self) -> int:
        return int(self.depth.max())

    def apply(self, features: FloatArray) -> IntArray:
        """Return the leaf index reached by every row."""
        nodes = np.zeros(features.shape[0], dtype=np.int64)
        while True:
            active = np.nonzero(self.feature[nodes] != LEAF)[0]
            if active.size == 0:
                return nodes
            current = nodes[active]
            go_left = features[active, self.feature[current]] <= self.threshold[current]
            nodes[active] = np.where(go_left, self.left[current], self.right[current])

    def predict(self, features: FloatArray) -> IntArray:
        return self.value[self.apply(features)]

    def to_state(self) -> dict[str, list[Any]]:
        return {
            "feature": self.feature.tolist(),
            "threshold": self.threshold.tolist(),
            "left": self.left.tolist(),
            "right": self.right.tolist(),
            "value": self.value.tolist(),
            "impurity": self.impurity.tolist(),
            "n_samples": self.n_samples.tolist(),
            "depth": self.depth.tolist(),
        }

    @classmethod
    def from_state(cls, state: dict[str, Any]) -> TreeArrays:
        ints = {name: np.asarray(state[name], dtype=np.int64) for name in ("feature", "left", "right", "value")}
        floats = {name: np.asarray(state[name], dtype=np.float64) for name in ("threshold", "impurity")}
        extra = {name: np.asarray(state[name], dtype=np.int64) for name in ("n_samples", "depth")}
        arrays = {**ints, **floats, **extra}
        sizes = {array.shape for array in arrays.values()}
        if len(sizes) != 1 or next(iter(sizes)) == (0,):
            msg = "tree node arrays must be non-empty and equally sized"
            raise ValueError(msg)
        return cls(**{name: readonly(array) for name, array in arrays.items()})


class _NodeBuffer:
    """Growable per-node columns used while a tree is being built."""

    def __init__(self) -> None:
        self.feature: list[int] = []
        self.threshold: list[float] = []
        self.left: list[int] = []
        self.right: list[int] = []
        self.value: list[int] = []
        self.impurity: list[float] = []
        self.n_samples: list[int] = []
        self.depth: list[int] = []

    def add(self, depth: int) -> int:
        self.feature.append(LEAF)
        self.threshold.append(0.0)
        self.left.append(LEAF)
        self.right.append(LEAF)
        self.value.append(0)
        self.impurity.append(0.0)
        self.n_samples.append(0)
        self.depth.append(depth)
        return len(self.feature) - 1

    def freeze(self) -> TreeArrays:
        return TreeArrays(
            feature=readonly(np.asarray(self.feature, dtype=np.int64)),
            threshold=readonly(np.asarray(self.threshold, dtype=np.float64)),
            left=readonly(np.asarray(self.left, dtype=np.int64)),
            right=readonly(np.asarray(self.right, dtype=np.int64)),
            value=readonly(np.asarray(self.value, dtype=np.int64)),
            impurity=readonly(np.asarray(self.impurity, dtype=np.float64)),
            n_samples=readonly(np.asarray(self.n_samples, dtype=np.int64)),
            depth=readonly(np.asarray(self.depth, dtype=np.int64)),
        )


def _threshold(lower: float, upper: float) -> float:
    midpoint = (lower + upper) / 2.0
    # Adjacent floats can round the midpoint up onto the upper value.
    return lower if midpoint >= upper else midpoint


def _best_split(
    features: FloatArray,
    labels: IntArray,
    counts: IntArray,
    candidates: IntArray,
    min_samples_leaf: int,
) -> tuple[int, float] | None:
    n_rows = labels.size
    n_classes = counts.size
    one_hot = np.eye(n_classes, dtype=np.int64)
    n_left = np.arange(1, n_rows, dtype=np.int64)
    n_right = n_rows - n_left
    size_ok = (n_left >= min_samples_leaf) & (n_right >= min_samples_leaf)
    if not size_ok.any():
        return None

    best: tuple[int, float] | None = None
    best_score = -math.inf
    for feature in candidates:
        column = features[:, feature]
        order = np.argsort(column, kind="stable")
        ordered = column[order]
        valid = size_ok & (ordered[:-1] < ordered[1:])
        if not valid.any():
            continue
        left_counts = np.cumsum(one_hot[labels[order]], axis=0)[:-1]
        right_counts = counts - left_counts
        score = (
            np.sum(left_counts * left_counts, axis=1) / n_left
            + np.sum(right_counts * right_counts, axis=1) / n_right
        )
        score = np.where(valid, score, -math.inf)
        position = int(np.argmax(score))
        if score[position] > best_score:
            best_score = float(score[position])
            best = (int(feature), _threshold(float(ordered[position]), float(ordered[position + 1])))
    return best


def _candidate_features(n_features: int, max_features: int | None, rng: np.random.Generator | None) -> IntArray:
    if max_features is None or max_features >= n_features:
        return np.arange(n_features, dtype=np.int64)
    if rng is None:
        msg = "a random generator is required when max_features restricts the split search"
        raise ValueError(msg)
    return np.sort(rng.choice(n_features, size=max_features, replace=False)).astype(np.int64)


def build_tree(  # noqa: PLR0913
    features: FloatArray,
    labels: IntArray,
    n_classes: int,
    *,
    max_depth: int | None,
    min_samples_split: int,
    min_samples_leaf: int,
    max_features: int | None = None,
    rng: np.random.Generator | None = None,
) -> TreeArrays:
    """Grow a CART tree.

    A node becomes a leaf when it is pure, at `max_depth`, smaller than
    `min_samples_split`, or when no boundary leaves `min_samples_leaf` rows on
    both sides. `rng` is consulted only when `max_features` restricts the
    split search.

    Args:
        features: ``(n, d)`` finite training matrix.
        labels: ``(n,)`` class ids.
        n_classes: Number of class ids.
        max_depth: Depth limit, None for unlimited.
        min_samples_split: Smallest node that may be split.
        min_samples_leaf: Smallest allowed child.
        max_features: Features sampled per split, None for all.
        rng: Source of the per-split feature samples.

    Returns:
        The fitted tree.
    """
    buffer = _NodeBuffer()
    root = buffer.add(0)
    stack: list[tuple[int, IntArray]] = [(root, np.arange(labels.size, dtype=np.int64))]
    while stack:
        node, rows = stack.pop()
        depth = buffer.depth[node]
        node_labels = labels[rows]
        counts = np.bincount(node_labels, minlength=n_classes)
        buffer.value[node] = int(np.argmax(counts))
        buffer.impurity[node] = gini(counts)
        buffer.n_samples[node] = int(rows.size)
        if (
            (max_depth is not None and depth >= max_depth)
            or rows.size < min_samples_split
            or np.count_nonzero(counts) <= 1
        ):
            continue
        candidates = _candidate_features(features.shape[1], max_features, rng)
        split = _best_split(features[rows], node_labels, counts, candidates, min_samples_leaf)
        if split is None:
            continue
        feature, threshold = split
        go_left = features[rows, feature] <= threshold
        left = buffer.add(depth + 1)
        right = buffer.add(depth + 1)
        buffer.feature[node] = feature
        buffer.threshold[node] = threshold
        buffer.left[node] = left
        buffer.right[node] = right
        stack.append((right, rows[~go_left]))
        stack.append((left, rows[go_left]))
    return buffer.freeze()


@dataclass(frozen=True, slots=True, kw_only=True)
class TreeModel(TrainedModel):
    """A single fitted CART tree."""

    kind: ClassVar[ClassifierKind] = ClassifierKind.CART

    tree: TreeArrays

    def _predict(self, features: FloatArray) -> IntArray:
        return self.tree.predict(features)

    def state(self) -> dict[str, Any]:
        return {"tree": self.tree.to_state()}

    @classmethod
    def from_state(cls, state: dict[str, Any], *, n_features: int, n_classes: int, train_time: float) -> TreeModel:
        return cls(
            n_features=n_features,
            n_classes=n_classes,
            train_time=train_time,
            tree=TreeArrays.from_state(state["tree"]),
        )


def fit_tree(spec: CartSpec, features: FloatArray, labels: IntArray, n_classes: int, *, seed: int) -> TreeModel:
    """Fit a CART tree; `seed` only matters when `spec.max_features` is set."""
    rng = stream(seed, tag("cart")) if spec.max_features is not None else None
    tree = build_tree(
        features,
        labels,
        n_classes,
        max_depth=spec.max_depth,
        min_samples_split=spec.min_samples_split,
        min_samples_leaf=spec.min_samples_leaf,
        max_features=spec.max_features,
        rng=rng,
    )
    return TreeModel(n_features=features.shape[1], n_classes=n_classes, tree=tree)
