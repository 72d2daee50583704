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

"""Unit tests for optimizer types, population operations and decay rules."""

from __future__ import annotations

import math

import numpy as np
import pytest

from evoids.optimizer import (
    Bounds,
    BoundsError,
    EvoConfig,
    OptimizerConfigError,
    Population,
    PopulationError,
    alpha_decay,
    beta_decay_to_center,
    beta_decay_to_neighbors,
    draw_subset,
    evaluate_objective,
    gamma_decay,
    generate_candidates,
    initialize_population,
    merge_truncate,
    neighborhood,
    population_statistics,
    stability_level,
    stable_walk,
)

pytestmark = pytest.mark.unit


def _population(positions: list[list[float]], nel: list[float]) -> Population:
    return Population(positions=np.array(positions, dtype=np.float64), nel=np.array(nel, dtype=np.float64))


def test_degenerate_bounds_are_rejected() -> None:
    with pytest.raises(BoundsError, match="lo < hi"):
        _ = Bounds.uniform(1, 0.0, 0.0)


@pytest.mark.parametrize(
    ("lo", "hi", "message"),
    [
        ([0.0, 0.0], [1.0], "lengths differ"),
        ([0.0], [math.inf], "finite"),
        ([], [], "at least one dimension"),
        ([0.0, 2.0], [1.0, 1.0], "dimension 1"),
    ],
)
def test_malformed_bounds(lo: list[float], hi: list[float], message: str) -> None:
    with pytest.raises(BoundsError, match=message):
        _ = Bounds(np.array(lo), np.array(hi))


def test_bounds_clamp_and_span() -> None:
    bounds = Bounds(np.array([0.0, -1.0]), np.array([10.0, 1.0]))
    assert bounds.dims == 2  # noqa: PLR2004
    assert bounds.span.tolist() == [10.0, 2.0]
    assert bounds.clamp(np.array([-3.0, 4.0])).tolist() == [0.0, 1.0]


@pytest.mark.parametrize(
    ("kwargs", "field"),
    [
        ({"n_particles": 1, "max_fes": 10}, "n_particles"),
        ({"n_particles": 10, "max_fes": 9}, "max_fes"),
        ({"n_particles": 4, "k_neighbors": 4}, "k_neighbors"),
        ({"n_particles": 4, "k_neighbors": 0}, "k_neighbors"),
        ({"seed": -1}, "seed"),
        ({"stable_step_scale": 0.0}, "stable_step_scale"),
    ],
)
def test_invalid_configs_name_the_field(kwargs: dict[str, float], field: str) -> None:
    with pytest.raises(OptimizerConfigError, match=f"evo.{field}") as excinfo:
        _ = EvoConfig(**kwargs)  # type: ignore[arg-type]
    assert excinfo.value.field_name == field


@pytest.mark.parametrize(("n_particles", "expected"), [(20, 5), (3, 2), (2, 1), (100, 10)])
def test_default_neighbourhood_size(n_particles: int, expected: int) -> None:
    assert EvoConfig(n_particles=n_particles, max_fes=n_particles).neighbors == expected


def test_initial_population_respects_bounds_and_objective_range() -> None:
    config = EvoConfig(n_particles=3, max_fes=3, seed=1)
    population, non_finite = initialize_population(config, Bounds.uniform(2, 0.0, 1.0), lambda x: float(np.sum(x)))
    assert len(population) == 3  # noqa: PLR2004
    assert non_finite == 0
    assert np.all((population.positions >= 0.0) & (population.positions <= 1.0))
    assert np.all((population.nel >= 0.0) & (population.nel <= 2.0))


def test_initial_population_is_deterministic() -> None:
    config = EvoConfig(n_particles=5, max_fes=5, seed=42)
    bounds = Bounds.uniform(3, -2.0, 2.0)
    first, _ = initialize_population(config, bounds, lambda x: float(np.dot(x, x)))
    second, _ = initialize_population(config, bounds, lambda x: float(np.dot(x, x)))
    assert np.array_equal(first.positions, second.positions)
    assert np.array_equal(first.nel, second.nel)


def test_non_finite_objective_values_rank_last() -> None:
    assert evaluate_objective(lambda _: math.nan, np.zeros(2)) == (math.inf, True)
    assert evaluate_objective(lambda _: 2.5, np.zeros(2)) == (2.5, False)


def test_objective_receives_a_read_only_position() -> None:
    def mutate(position: np.ndarray) -> float:
        position[0] = 1.0
        return 0.0

    with pytest.raises(ValueError, match="read-only"):
        _ = evaluate_objective(mutate, np.zeros(2))


def test_statistics_of_two_particles() -> None:
    stats = population_statistics(_population([[0.0, 0.0], [2.0, 2.0]], [1.0, 3.0]))
    assert stats.x_cp.tolist() == [1.0, 1.0]
    assert stats.eb == 2.0  # noqa: PLR2004
    assert stats.best_index == 0
    assert (stats.best_nel, stats.worst_nel) == (1.0, 3.0)


def test_statistics_of_a_single_particle() -> None:
    stats = population_statistics(_population([[5.0]], [7.0]))
    assert stats.x_cp.tolist() == [5.0]
    assert stats.eb == stats.best_nel == stats.worst_nel == 7.0  # noqa: PLR2004


def test_statistics_ties_pick_the_lowest_index() -> None:
    assert population_statistics(_population([[0.0], [1.0]], [4.0, 4.0])).best_index == 0


def test_statistics_of_an_empty_population() -> None:
    with pytest.raises(PopulationError, match="non-empty"):
        _ = population_statistics(Population(positions=np.empty((0, 2)), nel=np.empty(0)))


def test_population_arrays_must_align() -> None:
    with pytest.raises(PopulationError, match="not aligned"):
        _ = _population([[0.0], [1.0]], [1.0])


def test_stability_level_endpoints() -> None:
    stats = population_statistics(_population([[0.0], [1.0]], [1.0, 3.0]))
    assert stability_level(3.0, stats) == 1.0
    assert stability_level(1.0, stats) == 0.0
    assert stability_level(2.0, stats) == pytest.approx(0.5)
    assert stability_level(math.inf, stats) == 1.0
    flat = population_statistics(_population([[0.0], [1.0]], [2.0, 2.0]))
    assert stability_level(2.0, flat) == 0.0


def test_neighbourhood_nearest_point_and_centroid() -> None:
    population = _population([[0.0], [1.0], [10.0]], [0.0, 0.0, 0.0])
    neighbours, centroid = neighborhood(population, 0, 1)
    assert neighbours.tolist() == [1]
    assert centroid.tolist() == [1.0]
    neighbours, centroid = neighborhood(population, 0, 2)
    assert neighbours.tolist() == [1, 2]
    assert centroid.tolist() == [5.5]


def test_neighbourhood_excludes_self_at_zero_distance() -> None:
    population = _population([[3.0], [3.0], [7.0]], [0.0, 0.0, 0.0])
    neighbours, centroid = neighborhood(population, 0, 1)
    assert neighbours.tolist() == [1]
    assert centroid.tolist() == [3.0]


@pytest.mark.parametrize(("index", "k"), [(0, 0), (0, 3), (5, 1)])
def test_neighbourhood_rejects_bad_arguments(index: int, k: int) -> None:
    with pytest.raises(PopulationError):
        _ = neighborhood(_population([[0.0], [1.0], [2.0]], [0.0, 0.0, 0.0]), index, k)


def test_beta_decay_to_center_is_clamped() -> None:
    candidate = beta_decay_to_center(
        np.array([1.0]),
        np.array([0.0]),
        np.array([2.0]),
        np.array([0.5]),
        np.array([0.5]),
        0.5,
    )
    assert candidate.tolist() == [-1.0]
    assert Bounds.uniform(1, 0.0, 10.0).clamp(candidate).tolist() == [0.0]


def test_beta_decay_to_center_guards_zero_stability() -> None:
    candidate = beta_decay_to_center(
        np.array([0.0]),
        np.array([1.0]),
        np.array([1.0]),
        np.array([1.0]),
        np.array([1.0]),
        0.0,
    )
    assert candidate.tolist() == [0.0]


def test_beta_decay_to_neighbours() -> None:
    candidate = beta_decay_to_neighbors(
        np.array([1.0]),
        np.array([3.0]),
        np.array([1.0]),
        np.array([1.0]),
        np.array([1.0]),
    )
    assert candidate.tolist() == [3.0]


def test_alpha_and_gamma_copy_selected_dimensions() -> None:
    x_i = np.array([5.0, 5.0])
    assert alpha_decay(x_i, np.array([9.0, 9.0]), [0]).tolist() == [9.0, 5.0]
    assert gamma_decay(x_i, np.array([1.0, 2.0]), [1]).tolist() == [5.0, 2.0]
    assert x_i.tolist() == [5.0, 5.0]


def test_stable_walk_scales_by_bound_width() -> None:
    step = stable_walk(np.array([5.0]), Bounds.uniform(1, 0.0, 10.0), np.array([0.5]), np.array([-1.0]), 0.1)
    assert step.tolist() == [pytest.approx(4.5)]


@pytest.mark.parametrize("dims", [1, 2, 7])
def test_draw_subset_is_non_empty_sorted_and_distinct(dims: int) -> None:
    rng = np.random.default_rng(dims)
    for _ in range(25):
        subset = draw_subset(rng, dims)
        assert 1 <= subset.size <= dims
        assert subset.tolist() == sorted(set(subset.tolist()))
        assert subset.min() >= 0
        assert subset.max() < dims


def test_stable_particle_takes_one_bounded_step() -> None:
    population = _population([[0.0, 0.0], [4.0, 4.0], [8.0, 8.0]], [0.0, 1.0, 10.0])
    stats = population_statistics(population)
    bounds = Bounds.uniform(2, 0.0, 10.0)
    candidates = generate_candidates(
        population,
        0,
        stats,
        bounds,
        np.random.default_rng(3),
        x_ng=np.array([6.0, 6.0]),
        stable_step_scale=0.1,
    )
    assert len(candidates) == 1
    assert np.all(np.abs(candidates[0]) <= 1.0)
    assert np.all(candidates[0] >= 0.0)


def test_least_stable_particle_emits_alpha_and_gamma_candidates() -> None:
    population = _population([[0.0, 0.0], [4.0, 4.0], [8.0, 8.0]], [0.0, 1.0, 10.0])
    stats = population_statistics(population)
    candidates = generate_candidates(
        population,
        2,
        stats,
        Bounds.uniform(2, 0.0, 10.0),
        np.random.default_rng(5),
        x_ng=np.array([2.0, 2.0]),
        stable_step_scale=0.1,
    )
    assert len(candidates) == 2  # noqa: PLR2004
    alpha, gamma = candidates
    assert set(alpha.tolist()) <= {0.0, 8.0}
    assert set(gamma.tolist()) <= {2.0, 8.0}
    assert not np.array_equal(alpha, population.positions[2])


def test_unstable_candidates_stay_inside_bounds() -> None:
    rng = np.random.default_rng(0)
    bounds = Bounds.uniform(3, -1.0, 1.0)
    population = Population(positions=rng.uniform(-1.0, 1.0, size=(6, 3)), nel=np.arange(6, dtype=np.float64))
    stats = population_statistics(population)
    for index in range(len(population)):
        _, x_ng = neighborhood(population, index, 2)
        for candidate in generate_candidates(
            population,
            index,
            stats,
            bounds,
            np.random.default_rng(index),
            x_ng=x_ng,
            stable_step_scale=0.5,
        ):
            assert np.all((candidate >= -1.0) & (candidate <= 1.0))


def test_merge_keeps_the_best_particles() -> None:
    old = _population([[0.0], [1.0]], [1.0, 3.0])
    merged = merge_truncate(old, np.array([[2.0], [3.0]]), np.array([2.0, 0.5]), 2)
    assert merged.nel.tolist() == [0.5, 1.0]
    assert merged.positions.tolist() == [[3.0], [0.0]]


def test_merge_with_worse_candidates_keeps_the_old_population() -> None:
    old = _population([[0.0], [1.0]], [1.0, 3.0])
    merged = merge_truncate(old, np.array([[5.0], [6.0]]), np.array([4.0, 9.0]), 2)
    assert merged.positions.tolist() == old.positions.tolist()
    assert merged.nel.tolist() == old.nel.tolist()


def test_merge_ties_keep_existing_particles_first() -> None:
    old = _population([[0.0], [1.0]], [1.0, 2.0])
    merged = merge_truncate(old, np.array([[9.0]]), np.array([1.0]), 2)
    assert merged.positions.tolist() == [[0.0], [9.0]]
    assert merge_truncate(old, np.array([[9.0]]), np.array([1.0]), 1).positions.tolist() == [[0.0]]


def test_merge_drops_non_finite_candidates_first() -> None:
    old = _population([[0.0], [1.0]], [1.0, 2.0])
    merged = merge_truncate(old, np.array([[7.0], [8.0]]), np.array([math.inf, 1.5]), 2)
    assert merged.nel.tolist() == [1.0, 1.5]
