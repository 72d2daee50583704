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

"""Energy Valley Optimizer public API."""

from .bench import (
    BENCH_N_PARTICLES,
    LOW_DIM_N_PARTICLES,
    LOW_DIM_STABLE_STEP_SCALE,
    BenchRecord,
    BenchRun,
    bench_config,
    run_bench,
    write_bench_outputs,
)
from .decay import (
    alpha_decay,
    beta_decay_to_center,
    beta_decay_to_neighbors,
    draw_subset,
    gamma_decay,
    generate_candidates,
    stable_walk,
)
from .engine import GenerationReport, optimize, propose_generation
from .functions import TEST_FUNCTIONS, UnknownBenchFunctionError, get_test_function, rastrigin, rosenbrock, sphere
from .models import (
    Bounds,
    BoundsError,
    EvoConfig,
    OptimizerConfigError,
    OptResult,
    Particle,
    Population,
    PopulationError,
    PopulationStats,
)
from .population import (
    evaluate_objective,
    initialize_population,
    merge_truncate,
    neighborhood,
    population_statistics,
    stability_level,
)

__all__ = [
    "BENCH_N_PARTICLES",
    "LOW_DIM_N_PARTICLES",
    "LOW_DIM_STABLE_STEP_SCALE",
    "TEST_FUNCTIONS",
    "BenchRecord",
    "BenchRun",
    "Bounds",
    "BoundsError",
    "EvoConfig",
    "GenerationReport",
    "OptResult",
    "OptimizerConfigError",
    "Particle",
    "Population",
    "PopulationError",
    "PopulationStats",
    "UnknownBenchFunctionError",
    "alpha_decay",
    "bench_config",
    "beta_decay_to_center",
    "beta_decay_to_neighbors",
    "draw_subset",
    "evaluate_objective",
    "gamma_decay",
    "generate_candidates",
    "get_test_function",
    "initialize_population",
    "merge_truncate",
    "neighborhood",
    "optimize",
    "population_statistics",
    "propose_generation",
    "rastrigin",
    "rosenbrock",
    "run_bench",
    "sphere",
    "stability_level",
    "stable_walk",
    "write_bench_outputs",
]
