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

"""Generation loop of the Energy Valley Optimizer.

Each generation reads one frozen snapshot of the population: statistics,
neighbourhoods and candidates are all derived from it before any candidate
is evaluated, and the merge happens once at the generation barrier. Particle
`i` in generation `g` draws from substream ``(seed, g, i)``, so evaluating
candidates on a thread pool returns the same result as a serial run.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from evoids.core.model_types import LogComponent
from evoids.logging import structured_extra
from evoids.seeding import stream

from .decay import generate_candidates
from .models import OptResult
from .population import (
    evaluate_objective,
    initialize_population,
    merge_truncate,
    neighborhood,
    population_statistics,
)

if TYPE_CHECKING:
    from collections.abc import Callable

    from evoids.core.type_aliases import FloatArray, Objective

    from .models import Bounds, EvoConfig, Population

logger: logging.Logger = logging.getLogger("evoids.optimizer")

__all__ = ["GenerationReport", "optimize", "propose_generation"]


@dataclass(frozen=True, slots=True)
class GenerationReport:
    """Progress snapshot passed to `optimize` callbacks after each generation."""

    generation: int
    evaluations: int
    best_nel: float


def propose_generation(
    population: Population,
    bounds: Bounds,
    config: EvoConfig,
    generation: int,
) -> list[FloatArray]:
    """Build every candidate for one generation from a frozen population.

    Args:
        population: Population at the start of the generation.
        bounds: Search-space box.
        config: Optimizer settings.
        generation: One-based generation number used to key substreams.

    Returns:
        Candidates in particle order (one or two per particle).
    """
    stats = population_statistics(population)
    k = config.neighbors
    candidates: list[FloatArray] = []
    for index in range(len(population)):
        rng = stream(config.seed, generation, index)
        _, x_ng = neighborhood(population, index, k)
        candidates.extend(
            generate_candidates(
                population,
                index,
                stats,
                bounds,
                rng,
                x_ng=x_ng,
                stable_step_scale=config.stable_step_scale,
            ),
        )
    return candidates


def _evaluate_all(
    objective: Objective,
    candidates: list[FloatArray],
    executor: ThreadPoolExecutor | None,
) -> tuple[FloatArray, int]:
    if executor is None:
        results = [evaluate_objective(objective, candidate) for candidate in candidates]
    else:
        results = list(executor.map(lambda candidate: evaluate_objective(objective, candidate), candidates))
    values = np.fromiter((value for value, _ in results), dtype=np.float64, count=len(results))
    return values, sum(1 for _, flagged in results if flagged)


def optimize(
    objective: Objective,
    bounds: Bounds,
    config: EvoConfig,
    *,
    workers: int = 1,
    progress: Callable[[GenerationReport], None] | None = None,
) -> OptResult:
    """Minimise `objective` inside `bounds`.

    Args:
        objective: Function of one position returning a real value. Non-finite
            values are treated as ``+inf``. Must be safe to call concurrently
            when `workers > 1`.
        bounds: Search-space box.
        config: Validated optimizer settings.
        workers: Threads used to evaluate candidates; results do not depend on it.
        progress: Optional callback invoked after every generation.

    Returns:
        The best particle ever seen together with the best-fitness history.
    """
    started = time.perf_counter()
    population, non_finite = initialize_population(config, bounds, objective)
    evaluations = len(population)
    best_index = int(np.argmin(population.nel))
    best_position = population.positions[best_index].copy()
    best_nel = float(population.nel[best_index])
    history: list[float] = [best_nel]
    generation = 0

    executor = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        while evaluations < config.max_fes:
            generation += 1
            candidates = propose_generation(population, bounds, config, generation)
            values, flagged = _evaluate_all(objective, candidates, executor)
            evaluations += len(candidates)
            non_finite += flagged
            population = merge_truncate(population, np.asarray(candidates), values, config.n_particles)
            if population.nel[0] < best_nel:
                best_nel = float(population.nel[0])
                best_position = population.positions[0].copy()
            history.append(best_nel)
            logger.debug(
                "Generation %d complete",
                generation,
                extra=structured_extra(
                    component=LogComponent.OPTIMIZER,
                    generation=generation,
                    evaluations=evaluations,
                    best_nel=best_nel,
                ),
            )
            if progress is not None:
                progress(GenerationReport(generation=generation, evaluations=evaluations, best_nel=best_nel))
    finally:
        if executor is not None:
            executor.shutdown(wait=True)

    if non_finite:
        logger.warning(
            "Objective returned %d non-finite values; they were ranked as +inf",
            non_finite,
            extra=structured_extra(component=LogComponent.OPTIMIZER, seed=config.seed, evaluations=evaluations),
        )
    logger.info(
        "Optimizer finished after %d generations",
        generation,
        extra=structured_extra(
            component=LogComponent.OPTIMIZER,
            seed=config.seed,
            generation=generation,
            evaluations=evaluations,
            best_nel=best_nel,
            duration_ms=(time.perf_counter() - started) * 1000.0,
        ),
    )
    best_position.setflags(write=False)
    return OptResult(
        best_position=best_position,
        best_nel=best_nel,
        history=tuple(history),
        evaluations_used=evaluations,
        generations=generation,
        non_finite_evaluations=non_finite,
        seed=config.seed,
    )
