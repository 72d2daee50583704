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


"""Convergence checks of the optimizer at realistic budgets."""

from __future__ import annotations

import numpy as np
import pytest

from evoids.optimizer import bench_config, rastrigin, run_bench

pytestmark = [pytest.mark.integration, pytest.mark.slow]


def test_ten_dimensional_sphere_median_over_ten_seeds() -> None:
    config = bench_config(10, 5000, seed=0, n_particles=30)
    record = run_bench("sphere", 10, config, repeats=10)
    summary = record.summary()
    assert summary["seeds"] == list(range(10))
    assert summary["median"] < 1e-3  # type: ignore[operator]  # noqa: PLR2004
    assert all(run.result.evaluations_used <= 5000 + 2 * 30 for run in record.runs)


def test_rastrigin_bench_improves_on_the_initial_population() -> None:
    record = run_bench("rastrigin", 10, bench_config(10, 5000, seed=0), repeats=3)
    for run in record.runs:
        history = np.asarray(run.result.history)
        assert history[-1] < history[0]
        assert rastrigin(run.result.best_position) == pytest.approx(run.result.best_nel)
