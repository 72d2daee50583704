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

"""Unit tests for optimizer-driven feature selection and its exhaustive reference."""

from __future__ import annotations

import json
from typing import TYPE_CHECKING

import numpy as np
import pytest

from evoids.classifiers import CartSpec, KnnSpec
from evoids.data import Dataset
from evoids.optimizer import EvoConfig
from evoids.selection import (
    CostWeights,
    FeatureMask,
    FeatureSelectionError,
    FeatureSelector,
    FsResultFormatError,
    default_inner_seed,
    enumerate_masks,
    exhaustive_search,
    fs_cost,
    load_fs_result,
    select_features,
    write_fs_result,
)
from tests.fixtures.builders import build_blobs

if TYPE_CHECKING:
    from pathlib import Path

pytestmark = pytest.mark.unit


def _three_signal_features(seed: int = 2024, rows: int = 120) -> Dataset:
    """Eight columns; the label depends on the sum of the first three only."""
    rng = np.random.default_rng(seed)
    features = rng.uniform(0.0, 1.0, size=(rows, 8))
    labels = (features[:, :3].sum(axis=1) > 1.5).astype(np.int64)  # noqa: PLR2004
    return Dataset(features, labels, tuple(f"f{index}" for index in range(8)), ("low", "high"))


def test_enumerate_masks_in_counting_order() -> None:
    masks = enumerate_masks(3)
    assert len(masks) == 7  # noqa: PLR2004
    assert [mask.to_list() for mask in masks[:3]] == [[1, 0, 0], [0, 1, 0], [1, 1, 0]]
    assert masks[-1].to_list() == [1, 1, 1]
    assert len(enumerate_masks(8)) == 255  # noqa: PLR2004


@pytest.mark.parametrize("n_features", [0, 17])
def test_enumerate_masks_rejects_unreasonable_widths(n_features: int) -> None:
    with pytest.raises(FeatureSelectionError, match="exhaustive search"):
        _ = enumerate_masks(n_features)


def test_selector_memoises_by_bit_pattern() -> None:
    dataset = build_blobs(n_per_class=10, n_features=4)
    selector = FeatureSelector(dataset, KnnSpec(k=3), CostWeights(), inner_seed=3)
    first = selector.evaluate(FeatureMask.from_indices([0, 2], 4))
    second = selector.evaluate(FeatureMask([True, False, True, False]))
    assert first == second
    stats = selector.cache_stats()
    assert (stats.hits, stats.misses, stats.size) == (1, 1, 1)
    assert selector.objective(np.array([0.9, 0.1, 0.6, 0.0])) == first[0]
    assert selector.cache_stats().hits == 2  # noqa: PLR2004


def test_selector_agrees_with_fs_cost() -> None:
    dataset = build_blobs(n_per_class=10, n_features=4)
    weights = CostWeights(1.0, 0.5, 0.5, 0.1)
    mask = FeatureMask.from_indices([1, 2, 3], 4)
    selector = FeatureSelector(dataset, CartSpec(), weights, inner_seed=8)
    cost, metrics = fs_cost(mask, dataset, CartSpec(), weights, 8)
    assert selector.evaluate(mask)[0] == cost
    assert selector.evaluate(mask)[1].accuracy == metrics.accuracy


def test_single_feature_selection_is_degenerate() -> None:
    dataset = build_blobs(n_per_class=8, n_features=1, informative=1)
    result = select_features(dataset, KnnSpec(k=1), CostWeights(), EvoConfig(n_particles=4, max_fes=12, seed=1))
    assert result.mask.to_list() == [1]
    assert result.selected_names == ("f0",)


def test_selection_is_reproducible_and_consistent() -> None:
    dataset = build_blobs(n_per_class=12, n_features=6, informative=2)
    config = EvoConfig(n_particles=6, max_fes=48, seed=13)
    first = select_features(dataset, KnnSpec(k=3), CostWeights(), config)
    second = select_features(dataset, KnnSpec(k=3), CostWeights(), config)
    assert first.mask == second.mask
    assert first.opt.history == second.opt.history
    assert first.inner_seed == default_inner_seed(13)
    assert first.cost == first.opt.best_nel
    assert first.cost == pytest.approx(CostWeights().cost(first.inner_metrics, first.mask.count, first.mask.size))
    assert list(first.selected_names) == first.mask.names(dataset.feature_names)
    assert first.cache.misses <= first.opt.evaluations_used


def test_selection_does_not_depend_on_worker_count() -> None:
    dataset = build_blobs(n_per_class=10, n_features=5)
    config = EvoConfig(n_particles=5, max_fes=30, seed=4)
    serial = select_features(dataset, CartSpec(), CostWeights(), config, inner_seed=1)
    threaded = select_features(dataset, CartSpec(), CostWeights(), config, inner_seed=1, workers=3)
    assert serial.mask == threaded.mask
    assert serial.opt.history == threaded.opt.history


@pytest.mark.slow
def test_search_lands_near_the_exhaustive_minimum() -> None:
    dataset = _three_signal_features()
    spec = KnnSpec(k=3)
    weights = CostWeights(1.0, 0.0, 0.0, 0.0)
    inner_seed = 77
    best_cost = exhaustive_search(dataset, spec, weights, inner_seed=inner_seed)[0][1]
    close = 0
    for seed in range(20):
        result = select_features(
            dataset,
            spec,
            weights,
            EvoConfig(max_fes=1500, seed=seed),
            inner_seed=inner_seed,
        )
        close += int(result.cost <= best_cost + 0.02)
    assert close >= 18  # noqa: PLR2004


def test_exhaustive_search_is_sorted_by_cost() -> None:
    dataset = build_blobs(n_per_class=8, n_features=3, informative=1)
    ranked = exhaustive_search(dataset, KnnSpec(k=1), CostWeights(1.0, 0.0, 0.0, 0.5), inner_seed=0)
    assert len(ranked) == 7  # noqa: PLR2004
    costs = [cost for _, cost in ranked]
    assert costs == sorted(costs)
    assert ranked[0][0] == FeatureMask.from_indices([0], 3)


def test_fs_result_file_round_trip(tmp_path: Path) -> None:
    dataset = build_blobs(n_per_class=8, n_features=4)
    result = select_features(dataset, KnnSpec(k=3), CostWeights(), EvoConfig(n_particles=4, max_fes=16, seed=2))
    path = write_fs_result(result, tmp_path / "fs" / "knn.json")
    document = load_fs_result(path)
    assert document.format == "evoids-fs-result"
    assert document.feature_mask() == result.mask
    assert document.selected_names == list(result.selected_names)
    assert document.classifier["kind"] == "knn"
    assert document.history == list(result.opt.history)
    assert document.inner_metrics.accuracy == result.inner_metrics.accuracy
    assert document.cost == result.cost


def test_fs_result_load_errors(tmp_path: Path) -> None:
    with pytest.raises(FsResultFormatError, match="Cannot read feature-selection result"):
        _ = load_fs_result(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    _ = broken.write_text("[", encoding="utf-8")
    with pytest.raises(FsResultFormatError, match="invalid JSON"):
        _ = load_fs_result(broken)
    wrong = tmp_path / "wrong.json"
    _ = wrong.write_text(json.dumps({"format": "evoids-fs-result", "mask": [1]}), encoding="utf-8")
    with pytest.raises(FsResultFormatError, match="invalid field"):
        _ = load_fs_result(wrong)
