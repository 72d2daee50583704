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

"""Decay operators that move a particle towards more stable energy levels.

The operators are pure functions over explicit random draws so they can be
checked by hand; `generate_candidates` chains them with a particle's own
random substream and applies the branching rule:

* an unstable particle (``nel > eb``) whose stability level exceeds a drawn
  stability bound emits alpha and gamma candidates (dimension copies from the
  best particle and from the neighbourhood centroid);
* any other unstable particle emits the two beta candidates;
* a stable particle takes one bounded random step.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from .models import SL_EPSILON
from .population import stability_level

if TYPE_CHECKING:
    from collections.abc import Sequence

    from evoids.core.type_aliases import FloatArray, IntArray

    from .models import Bounds, Population, PopulationStats

__all__ = [
    "alpha_decay",
    "beta_decay_to_center",
    "beta_decay_to_neighbors",
    "draw_subset",
    "gamma_decay",
    "generate_candidates",
    "stable_walk",
]


def _copy_dimensions(x_i: FloatArray, source: FloatArray, subset: Sequence[int] | IntArray) -> FloatArray:
    candidate = np.array(x_i, dtype=np.float64)
    indices = np.asarray(subset, dtype=np.int64)
    candidate[indices] = np.asarray(source, dtype=np.float64)[indices]
    return candidate


def alpha_decay(x_i: FloatArray, x_bs: FloatArray, subset: Sequence[int] | IntArray) -> FloatArray:
    """Copy the dimensions in `subset` from the best particle into `x_i`.

    Args:
        x_i: Current particle position.
        x_bs: Best particle position.
        subset: Dimensions to overwrite.

    Returns:
        New (unclamped) candidate position.
    """
    return _copy_dimensions(x_i, x_bs, subset)


def gamma_decay(x_i: FloatArray, x_ng: FloatArray, subset: Sequence[int] | IntArray) -> FloatArray:
    """Copy the dimensions in `subset` from the neighbourhood centroid into `x_i`."""
    return _copy_dimensions(x_i, x_ng, subset)


def beta_decay_to_center(
    x_i: FloatArray,
    x_bs: FloatArray,
    x_cp: FloatArray,
    tau1: FloatArray,
    tau2: FloatArray,
    sl_i: float,
) -> FloatArray:
    """Move towards the best particle and away from the population centre.

    The step is scaled by ``1 / max(sl_i, SL_EPSILON)`` so less stable
    particles take shorter jumps.

    Args:
        x_i: Current particle position.
        x_bs: Best particle position.
        x_cp: Population centroid.
        tau1: Per-dimension weights for `x_bs`.
        tau2: Per-dimension weights for `x_cp`.
        sl_i: Stability level of the particle.

    Returns:
        New (unclamped) candidate position.
    """
    return x_i + (tau1 * x_bs - tau2 * x_cp) / max(sl_i, SL_EPSILON)


def beta_decay_to_neighbors(
    x_i: FloatArray,
    x_bs: FloatArray,
    x_ng: FloatArray,
    tau3: FloatArray,
    tau4: FloatArray,
) -> FloatArray:
    """Move towards the best particle and away from the neighbourhood centroid."""
    return x_i + (tau3 * x_bs - tau4 * x_ng)


def stable_walk(
    x_i: FloatArray,
    bounds: Bounds,
    tau: FloatArray,
    signs: FloatArray,
    step_scale: float,
) -> FloatArray:
    """Take a bounded random step of at most ``step_scale`` of the bound width.

    Args:
        x_i: Current particle position.
        bounds: Search-space box supplying the width.
        tau: Per-dimension step magnitudes in ``[0, 1)``.
        signs: Per-dimension directions, each ``-1`` or ``+1``.
        step_scale: Fraction of ``hi - lo`` covered by a full step.

    Returns:
        New (unclamped) candidate position.
    """
    return x_i + tau * bounds.span * step_scale * signs


def draw_subset(rng: np.random.Generator, dims: int) -> IntArray:
    """Draw a non-empty set of distinct dimensions.

    The size is uniform on ``1..dims``; members are drawn without replacement.

    Args:
        rng: Particle substream.
        dims: Dimensionality of the search space.

    Returns:
        Sorted dimension indices.
    """
    size = int(rng.integers(1, dims + 1))
    return np.sort(rng.choice(dims, size=size, replace=False)).astype(np.int64)


def generate_candidates(  # noqa: PLR0913
    population: Population,
    index: int,
    stats: PopulationStats,
    bounds: Bounds,
    rng: np.random.Generator,
    *,
    x_ng: FloatArray,
    stable_step_scale: float,
) -> list[FloatArray]:
    """Produce the clamped candidate positions for particle `index`.

    Args:
        population: Current population; read only.
        index: Particle being updated.
        stats: Statistics of `population` for this generation.
        bounds: Search-space box.
        rng: The particle's substream for this generation.
        x_ng: Centroid of the particle's neighbourhood.
        stable_step_scale: Step fraction for the stable random walk.

    Returns:
        One candidate for a stable particle, two for an unstable one.
    """
    x_i = population.positions[index]
    nel_i = float(population.nel[index])
    x_bs = population.positions[stats.best_index]
    dims = population.dims

    if nel_i > stats.eb:
        sl_i = stability_level(nel_i, stats)
        stability_bound = float(rng.uniform())
        if sl_i > stability_bound:
            raw = [
                alpha_decay(x_i, x_bs, draw_subset(rng, dims)),
                gamma_decay(x_i, x_ng, draw_subset(rng, dims)),
            ]
        else:
            tau = rng.uniform(size=(4, dims))
            raw = [
                beta_decay_to_center(x_i, x_bs, stats.x_cp, tau[0], tau[1], sl_i),
                beta_decay_to_neighbors(x_i, x_bs, x_ng, tau[2], tau[3]),
            ]
    else:
        tau = rng.uniform(size=dims)
        signs = rng.choice(np.array([-1.0, 1.0]), size=dims)
        raw = [stable_walk(x_i, bounds, tau, signs, stable_step_scale)]

    return [bounds.clamp(candidate) for candidate in raw]
