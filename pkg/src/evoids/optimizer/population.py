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

"""Population-level operations: initialisation, statistics, neighbourhoods, merge."""

from __future__ import annotations

import logging
import math
from typing import TYPE_CHECKING

import numpy as np

from evoids.core.model_types import LogComponent
from evoids.logging import structured_extra
from evoids.seeding import stream

from .models import Population, PopulationError, PopulationStats

if TYPE_CHECKING:
    from evoids.core.type_aliases import FloatArray, IntArray, Objective

    from .models import Bounds, EvoConfig

logger: logging.Logger = logging.getLogger("evoids.optimizer")

# Initialisation draws from spawn key (0,); generation streams use (generation, index).
_INIT_KEY = 0


def evaluate_objective(objective: Objective, position: FloatArray) -> tuple[float, bool]:
    """Evaluate `objective`, mapping non-finite results to ``+inf``.

    Args:
        objective: Function to minimise.
        position: Point to evaluate; passed read-only.

    Returns:
        ``(value, was_non_finite)``.
    """
    view = position.view()
    view.setflags(write=False)
    value = float(objective(view))
    if math.isfinite(value):
        return value, False
    return math.inf, True


def initialize_population(
    config: EvoConfig,
    bounds: Bounds,
    objective: Objective,
) -> tuple[Population, int]:
    """Draw and evaluate the initial population.

    Args:
        config: Validated optimizer settings.
        bounds: Search-space box.
        objective: Function to minimise.

    Returns:
        The evaluated population and the number of non-finite objective values seen.
    """
    rng = stream(config.seed, _INIT_KEY)
    positions = rng.uniform(bounds.lo, bounds.hi, size=(config.n_particles, bounds.dims))
    positions = np.clip(positions, bounds.lo, bounds.hi)
    nel = np.empty(config.n_particles, dtype=np.float64)
    non_finite = 0
    for index in range(config.n_particles):
        nel[index], flagged = evaluate_objective(objective, positions[index])
        non_finite += int(flagged)
    logger.debug(
        "Initialised %d particles in %d dimensions",
        config.n_particles,
        bounds.dims,
        extra=structured_extra(
            component=LogComponent.OPTIMIZER,
            seed=config.seed,
            evaluations=config.n_particles,
            best_nel=float(np.min(nel)),
        ),
    )
    return Population(positions=positions, nel=nel), non_finite


def population_statistics(population: Population) -> PopulationStats:
    """Compute centroid, energy barrier and best/worst NEL.

    Args:
        population: Evaluated population.

    Returns:
        Statistics for the current generation.

    Raises:
        PopulationError: If the population is empty.
    """
    if len(population) == 0:
        msg = "population_statistics requires a non-empty population"
        raise PopulationError(msg)
    best_index = int(np.argmin(population.nel))
    return PopulationStats(
        x_cp=population.positions.mean(axis=0),
        eb=float(np.mean(population.nel)),
        best_index=best_index,
        best_nel=float(population.nel[best_index]),
        worst_nel=float(np.max(population.nel)),
    )


def stability_level(nel_i: float, stats: PopulationStats) -> float:
    """Return the min-max normalised NEL of a particle, in ``[0, 1]``.

    Args:
        nel_i: Particle fitness.
        stats: Statistics of the particle's population.

    Returns:
        ``0`` for the best particle (or when every NEL is equal), ``1`` for the worst.
    """
    if stats.worst_nel == stats.best_nel:
        return 0.0
    if not math.isfinite(nel_i):
        return 1.0
    level = (nel_i - stats.best_nel) / (stats.worst_nel - stats.best_nel)
    return min(1.0, max(0.0, level))


def neighborhood(population: Population, index: int, k: int) -> tuple[IntArray, FloatArray]:
    """Return the `k` nearest particles to `index` and their centroid.

    Args:
        population: Evaluated population.
        index: Particle whose neighbourhood is requested.
        k: Neighbourhood size, ``1 <= k < len(population)``.

    Returns:
        Neighbour indices ordered by distance (ties to the lower index) and
        the neighbourhood centroid ``X_NG``.

    Raises:
        PopulationError: If `k` is out of range or `index` is invalid.
    """
    size = len(population)
    if not 1 <= k < size:
        msg = f"neighborhood size k={k} must satisfy 1 <= k < population size {size}"
        raise PopulationError(msg)
    if not 0 <= index < size:
        msg = f"particle index {index} outside population of size {size}"
        raise PopulationError(msg)
    offsets = population.positions - population.positions[index]
    distances = np.sqrt(np.einsum("ij,ij->i", offsets, offsets))
    distances[index] = np.inf
    order = np.argsort(distances, kind="stable")[:k].astype(np.int64)
    return order, population.positions[order].mean(axis=0)


def merge_truncate(
    old: Population,
    candidates: FloatArray,
    candidate_nel: FloatArray,
    n_particles: int,
) -> Population:
    """Merge evaluated candidates into the population and keep the best `n_particles`.

    Ordering is ascending NEL; ties keep existing particles ahead of new ones,
    then the lower index.

    Args:
        old: Current population.
        candidates: ``(m, dims)`` evaluated candidate positions.
        candidate_nel: ``(m,)`` candidate fitness values.
        n_particles: Size of the returned population.

    Returns:
        The truncated population.
    """
    positions = np.vstack([old.positions, np.reshape(candidates, (-1, old.dims))])
    nel = np.concatenate([old.nel, np.asarray(candidate_nel, dtype=np.float64)])
    origin = np.concatenate([np.zeros(len(old), dtype=np.int64), np.ones(nel.size - len(old), dtype=np.int64)])
    rank_within = np.concatenate([np.arange(len(old)), np.arange(nel.size - len(old))])
    order = np.lexsort((rank_within, origin, nel))[:n_particles]
    return Population(positions=positions[order], nel=nel[order])


__all__ = [
    "evaluate_objective",
    "initialize_population",
    "merge_truncate",
    "neighborhood",
    "population_statistics",
    "stability_level",
]
