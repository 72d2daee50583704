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

"""Convergence benchmarks of the optimizer on analytic test functions.

Repeat `r` of a bench uses seed ``config.seed + r`` (wrapping at 2**64), so a
single-repeat bench reproduces a plain `optimize` call with the same config.
"""

from __future__ import annotations

import dataclasses
import logging
import time
from dataclasses import dataclass
from typing import TYPE_CHECKING, Final

import numpy as np
import pandas as pd

from evoids.core.model_types import BenchFunction, LogComponent
from evoids.json import dumps_pretty
from evoids.logging import structured_extra
from evoids.runtime import write_text_atomic
from evoids.seeding import MAX_SEED

from .engine import optimize
from .functions import get_test_function
from .models import DEFAULT_STABLE_STEP_SCALE, EvoConfig, OptimizerConfigError

if TYPE_CHECKING:
    from pathlib import Path

    from .models import Bounds, OptResult

logger: logging.Logger = logging.getLogger("evoids.bench")

__all__ = [
    "BENCH_N_PARTICLES",
    "LOW_DIM_N_PARTICLES",
    "LOW_DIM_STABLE_STEP_SCALE",
    "BenchRecord",
    "BenchRun",
    "bench_config",
    "run_bench",
    "write_bench_outputs",
]

BENCH_N_PARTICLES: Final[int] = 30
# One-dimensional searches: alpha decay copies the best particle and gamma decay
# copies the neighbourhood centroid, so a large population mostly re-evaluates
# duplicates. A small, fully connected population with a narrow walk gets more
# generations out of the same budget.
LOW_DIM_N_PARTICLES: Final[int] = 6
LOW_DIM_STABLE_STEP_SCALE: Final[float] = 0.03


@dataclass(frozen=True, slots=True)
class BenchRun:
    """One seeded optimizer run inside a bench."""

    seed: int
    result: OptResult
    seconds: float


@dataclass(frozen=True, slots=True)
class BenchRecord:
    """Convergence record for one test function.

    Attributes:
        function: Test function name.
        dims: Search-space dimensionality.
        n_particles: Population size used for every run.
        max_fes: Evaluation budget used for every run.
        runs: One entry per repeat, in seed order.
    """

    function: BenchFunction
    dims: int
    n_particles: int
    max_fes: int
    runs: tuple[BenchRun, ...]

    @property
    def finals(self) -> list[float]:
        """Final best NEL of every run."""
        return [run.result.best_nel for run in self.runs]

    def summary(self) -> dict[str, object]:
        """Return best/median/worst final NEL plus budget and timing totals."""
        finals = np.asarray(self.finals, dtype=np.float64)
        return {
            "function": self.function.value,
            "dims": self.dims,
            "n_particles": self.n_particles,
            "max_fes": self.max_fes,
            "repeats": len(self.runs),
            "seeds": [run.seed for run in self.runs],
            "best": float(np.min(finals)),
            "median": float(np.median(finals)),
            "worst": float(np.max(finals)),
            "evaluations": [run.result.evaluations_used for run in self.runs],
            "non_finite_evaluations": sum(run.result.non_finite_evaluations for run in self.runs),
            "seconds": float(sum(run.seconds for run in self.runs)),
        }

    def history_frame(self) -> pd.DataFrame:
        """Return the per-generation best NEL of every run as a long table."""
        rows = [
            (run.seed, iteration, value)
            for run in self.runs
            for iteration, value in enumerate(run.result.history)
        ]
        return pd.DataFrame(rows, columns=["seed", "iteration", "best_nel"])


def bench_config(
    dims: int,
    max_fes: int,
    *,
    seed: int = 0,
    n_particles: int | None = None,
    k_neighbors: int | None = None,
    stable_step_scale: float | None = None,
) -> EvoConfig:
    """Build the optimizer settings a bench uses for `dims` dimensions.

    Explicit arguments win over the presets. One-dimensional benches default to
    `LOW_DIM_N_PARTICLES` particles in a single neighbourhood with a
    `LOW_DIM_STABLE_STEP_SCALE` walk; everything else defaults to
    `BENCH_N_PARTICLES` particles and the optimizer's own neighbourhood and walk.

    Raises:
        OptimizerConfigError: If the resulting configuration is invalid.
    """
    if dims < 1:
        raise OptimizerConfigError("dims", f"must be >= 1 (got {dims})")
    low_dim = dims == 1
    particles = n_particles if n_particles is not None else (LOW_DIM_N_PARTICLES if low_dim else BENCH_N_PARTICLES)
    if k_neighbors is None and low_dim and n_particles is None:
        k_neighbors = particles - 1
    if stable_step_scale is None:
        stable_step_scale = LOW_DIM_STABLE_STEP_SCALE if low_dim else DEFAULT_STABLE_STEP_SCALE
    return EvoConfig(
        n_particles=particles,
        max_fes=max_fes,
        k_neighbors=k_neighbors,
        seed=seed,
        stable_step_scale=stable_step_scale,
    )


def run_bench(
    function: BenchFunction | str,
    dims: int,
    config: EvoConfig,
    *,
    repeats: int = 1,
    bounds: Bounds | None = None,
    workers: int = 1,
) -> BenchRecord:
    """Run the optimizer `repeats` times on a test function.

    Args:
        function: Test function name.
        dims: Dimensionality of the search space.
        config: Optimizer settings; `config.seed` seeds the first repeat.
        repeats: Number of independent runs.
        bounds: Search box; defaults to the function's conventional bounds.
        workers: Threads used to evaluate candidates within each run.

    Returns:
        The convergence record.

    Raises:
        OptimizerConfigError: If `repeats` is not positive or `bounds` has the
            wrong dimensionality.
    """
    if repeats < 1:
        raise OptimizerConfigError("repeats", f"must be >= 1 (got {repeats})")
    test_function = get_test_function(function)
    box = bounds if bounds is not None else test_function.bounds(dims)
    if box.dims != dims:
        raise OptimizerConfigError("dims", f"does not match bounds dimensionality ({dims} != {box.dims})")

    runs: list[BenchRun] = []
    for repeat in range(repeats):
        seed = (config.seed + repeat) % (MAX_SEED + 1)
        started = time.perf_counter()
        result = optimize(test_function.objective, box, dataclasses.replace(config, seed=seed), workers=workers)
        runs.append(BenchRun(seed=seed, result=result, seconds=time.perf_counter() - started))
        logger.info(
            "%s run %d/%d reached %.6g",
            test_function.name,
            repeat + 1,
            repeats,
            result.best_nel,
            extra=structured_extra(
                component=LogComponent.BENCH,
                seed=seed,
                evaluations=result.evaluations_used,
                best_nel=result.best_nel,
            ),
        )
    return BenchRecord(
        function=test_function.name,
        dims=dims,
        n_particles=config.n_particles,
        max_fes=config.max_fes,
        runs=tuple(runs),
    )


def write_bench_outputs(record: BenchRecord, out_dir: Path) -> tuple[Path, Path]:
    """Write ``<function>_history.csv`` and ``<function>_summary.json``.

    Args:
        record: Bench outcome.
        out_dir: Destination directory (created when missing).

    Returns:
        Paths of the history CSV and the summary JSON.
    """
    history_path = out_dir / f"{record.function.value}_history.csv"
    summary_path = out_dir / f"{record.function.value}_summary.json"
    history_csv = record.history_frame().to_csv(index=False, float_format="%.17g", lineterminator="\n")
    write_text_atomic(history_path, history_csv)
    write_text_atomic(summary_path, dumps_pretty(record.summary()))
    logger.debug(
        "Bench outputs written",
        extra=structured_extra(component=LogComponent.BENCH, path=out_dir),
    )
    return history_path, summary_path
