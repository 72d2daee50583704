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

"""Property-based tests for the optimizer's candidate generation and selection."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from evoids.optimizer import (
    Bounds,
    EvoConfig,
    Population,
    generate_candidates,
    merge_truncate,
    neighborhood,
    optimize,
    population_statistics,
    rastrigin,
    sphere,
)
from tests.property_based.strategies import nel_values

if TYPE_CHECKING:
    from evoids.core.type_aliases import Objective

pytestmark = pytest.mark.property


@st.composite
def _populations(draw: st.DrawFn) -> tuple[Population, Bounds]:
    dims = draw(st.integers(min_value=1, max_value=6))
    size = draw(st.integers(min_value=3, max_value=10))
    lo = draw(st.floats(-100.0, 0.0))
    width = draw(st.floats(0.5, 100.0))
    bounds = Bounds.uniform(dims, lo, lo + width)
    unit = draw(hnp.arrays(np.float64, (size, dims), elements=st.floats(0.0, 1.0)))
    nel = draw(hnp.arrays(np.float64, size, elements=st.floats(-1e3, 1e3)))
    return Population(positions=bounds.lo + unit * bounds.span, nel=nel), bounds


@settings(max_examples=75)
@given(_populations(), st.data(), st.integers(min_value=0, max_value=2**32))
def test_candidates_stay_inside_the_box(drawn: tuple[Population, Bounds], data: st.DataObject, seed: int) -> None:
    population, bounds = drawn
    index = data.draw(st.integers(min_value=0, max_value=len(population) - 1))
    stats = population_statistics(population)
    _, x_ng = neighborhood(population, index, 2)
    candidates = generate_candidates(
        population,
        index,
        stats,
        bounds,
        np.random.default_rng(seed),
        x_ng=x_ng,
        stable_step_scale=0.1,
    )
    assert len(candidates) in {1, 2}
    for candidate in candidates:
        assert candidate.shape == (population.dims,)
        assert np.all(candidate >= bounds.lo)
        assert np.all(candidate <= bounds.hi)


@given(
    st.integers(min_value=2, max_value=8).flatmap(lambda n: st.tuples(st.just(n), nel_values(n), nel_values(n))),
)
def test_merge_keeps_the_best_sorted(sizes: tuple[int, np.ndarray, np.ndarray]) -> None:
    n_particles, old_nel, candidate_nel = sizes
    old = Population(positions=np.zeros((n_particles, 2)), nel=old_nel)
    merged = merge_truncate(old, np.ones((n_particles, 2)), candidate_nel, n_particles)
    assert len(merged) == n_particles
    pooled = np.sort(np.concatenate([old_nel, candidate_nel]))[:n_particles]
    assert np.array_equal(merged.nel, pooled)
    assert merged.nel[0] <= old_nel.min()


@settings(max_examples=40)
@given(
    st.integers(min_value=0, max_value=2**64 - 1),
    st.integers(min_value=1, max_value=8),
    st.integers(min_value=2, max_value=12).flatmap(
        lambda n: st.tuples(st.just(n), st.integers(min_value=n, max_value=8 * n)),
    ),
    st.sampled_from([sphere, rastrigin]),
)
def test_best_fitness_never_gets_worse(
    seed: int,
    dims: int,
    budget: tuple[int, int],
    objective: Objective,
) -> None:
    n_particles, max_fes = budget
    config = EvoConfig(n_particles=n_particles, max_fes=max_fes, seed=seed)
    result = optimize(objective, Bounds.uniform(dims, -5.12, 5.12), config)
    history = np.asarray(result.history)
    assert np.all(np.diff(history) <= 0.0)
    assert history[-1] == result.best_nel
    assert result.evaluations_used >= max_fes
