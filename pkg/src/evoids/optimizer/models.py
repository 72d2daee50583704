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

"""Runtime types for the Energy Valley Optimizer.

`Bounds` and `EvoConfig` validate themselves on construction so an invalid
search space or budget never reaches the optimizer loop. `Population` stores
positions and NEL values as two aligned numpy arrays; `Particle` is the
per-row view handed to callers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Final

import numpy as np

from evoids.core.type_aliases import FloatArray
from evoids.exceptions import EvoidsValidationError
from evoids.seeding import MAX_SEED

DEFAULT_N_PARTICLES: Final[int] = 20
DEFAULT_MAX_FES: Final[int] = 1000
DEFAULT_STABLE_STEP_SCALE: Final[float] = 0.1
SL_EPSILON: Final[float] = 1e-9


class OptimizerConfigError(EvoidsValidationError):
    """Raised when an `EvoConfig` field is outside its allowed range."""

    def __init__(self, field_name: str, reason: str) -> None:
        """Initialise the error with the offending field.

        Args:
            field_name: Name of the invalid configuration field.
            reason: Human-readable constraint that was violated.
        """
        self.field_name = field_name
        self.reason = reason
        super().__init__(f"evo.{field_name} {reason}")


class BoundsError(OptimizerConfigError):
    """Raised when search-space bounds are malformed."""

    def __init__(self, reason: str) -> None:
        """Initialise the error.

        Args:
            reason: Description of the malformed bound.
        """
        super().__init__("bounds", reason)


class PopulationError(EvoidsValidationError):
    """Raised when a population operation receives an unusable population or index."""


def _as_vector(values: object, name: str) -> FloatArray:
    array = np.array(values, dtype=np.float64)
    if array.ndim != 1:
        msg = f"{name} must be one-dimensional"
        raise BoundsError(msg)
    return array


@dataclass(frozen=True, slots=True, eq=False)
class Bounds:
    """Per-dimension box constraints ``lo < hi``.

    Attributes:
        lo: Lower bound per dimension.
        hi: Upper bound per dimension.
    """

    lo: FloatArray
    hi: FloatArray

    def __post_init__(self) -> None:
        lo = _as_vector(self.lo, "lo")
        hi = _as_vector(self.hi, "hi")
        if lo.size == 0:
            msg = "must cover at least one dimension"
            raise BoundsError(msg)
        if lo.shape != hi.shape:
            msg = f"lo and hi lengths differ ({lo.size} != {hi.size})"
            raise BoundsError(msg)
        if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
            msg = "must be finite"
            raise BoundsError(msg)
        if np.any(lo >= hi):
            bad = int(np.flatnonzero(lo >= hi)[0])
            msg = f"require lo < hi in every dimension (dimension {bad}: {lo[bad]} >= {hi[bad]})"
            raise BoundsError(msg)
        lo.setflags(write=False)
        hi.setflags(write=False)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def uniform(cls, dims: int, lo: float, hi: float) -> Bounds:
        """Build bounds with identical limits in every dimension.

        Args:
            dims: Number of dimensions (at least 1).
            lo: Shared lower bound.
            hi: Shared upper bound.

        Returns:
            The bounds object.

        Raises:
            BoundsError: If `dims` is not positive or `lo >= hi`.
        """
        if dims < 1:
            msg = f"dims must be >= 1 (got {dims})"
            raise BoundsError(msg)
        return cls(np.full(dims, lo, dtype=np.float64), np.full(dims, hi, dtype=np.float64))

    @property
    def dims(self) -> int:
        """Number of dimensions."""
        return int(self.lo.size)

    @property
    def span(self) -> FloatArray:
        """Per-dimension width ``hi - lo``."""
        return self.hi - self.lo

    def clamp(self, position: FloatArray) -> FloatArray:
        """Return `position` clipped coordinate-wise into the box.

        Args:
            position: Candidate position.

        Returns:
            A new clipped array.
        """
        return np.clip(position, self.lo, self.hi)


@dataclass(frozen=True, slots=True)
class EvoConfig:
    """Optimizer budget and behaviour settings.

    Attributes:
        n_particles: Population size (at least 2 so a neighbourhood exists).
        max_fes: Objective-evaluation budget; must cover the initial population.
        k_neighbors: Neighbourhood size, or None for ``max(2, ceil(sqrt(n)))``
            capped at ``n_particles - 1``.
        seed: Unsigned 64-bit master seed.
        stable_step_scale: Fraction of the bound width used by the stable random walk.
    """

    n_particles: int = DEFAULT_N_PARTICLES
    max_fes: int = DEFAULT_MAX_FES
    k_neighbors: int | None = None
    seed: int = 0
    stable_step_scale: float = DEFAULT_STABLE_STEP_SCALE

    def __post_init__(self) -> None:
        if self.n_particles < 2:  # noqa: PLR2004
            raise OptimizerConfigError("n_particles", f"must be >= 2 (got {self.n_particles})")
        if self.max_fes < self.n_particles:
            raise OptimizerConfigError(
                "max_fes",
                f"must be >= n_particles so the initial population fits the budget "
                f"(got {self.max_fes} < {self.n_particles})",
            )
        if self.k_neighbors is not None and not 1 <= self.k_neighbors < self.n_particles:
            raise OptimizerConfigError(
                "k_neighbors",
                f"must satisfy 1 <= k < n_particles (got {self.k_neighbors}, n_particles={self.n_particles})",
            )
        if not 0 <= self.seed <= MAX_SEED:
            raise OptimizerConfigError("seed", f"must be an unsigned 64-bit integer (got {self.seed})")
        if not (0.0 < self.stable_step_scale <= 1.0):
            raise OptimizerConfigError("stable_step_scale", f"must lie in (0, 1] (got {self.stable_step_scale})")

    @property
    def neighbors(self) -> int:
        """Resolved neighbourhood size."""
        if self.k_neighbors is not None:
            return self.k_neighbors
        return min(max(2, math.ceil(math.sqrt(self.n_particles))), self.n_particles - 1)


@dataclass(frozen=True, slots=True, eq=False)
class Particle:
    """A candidate solution and its fitness (NEL, lower is better)."""

    position: FloatArray
    nel: float


@dataclass(frozen=True, slots=True, eq=False)
class Population:
    """Evaluated particles stored as aligned arrays.

    Attributes:
        positions: ``(n, dims)`` matrix, one row per particle.
        nel: ``(n,)`` fitness vector.
    """

    positions: FloatArray
    nel: FloatArray

    def __post_init__(self) -> None:
        positions = np.asarray(self.positions, dtype=np.float64)
        nel = np.asarray(self.nel, dtype=np.float64)
        if positions.ndim != 2 or nel.ndim != 1 or positions.shape[0] != nel.shape[0]:  # noqa: PLR2004
            msg = f"positions {positions.shape} and nel {nel.shape} are not aligned"
            raise PopulationError(msg)
        object.__setattr__(self, "positions", positions)
        object.__setattr__(self, "nel", nel)

    def __len__(self) -> int:
        return int(self.nel.shape[0])

    @property
    def dims(self) -> int:
        """Dimensionality of every position."""
        return int(self.positions.shape[1])

    def particle(self, index: int) -> Particle:
        """Return the particle stored at `index`.

        Args:
            index: Row index.

        Returns:
            A `Particle` view (position copied).
        """
        return Particle(position=self.positions[index].copy(), nel=float(self.nel[index]))


@dataclass(frozen=True, slots=True, eq=False)
class PopulationStats:
    """Population-level quantities consumed by the decay rules.

    Attributes:
        x_cp: Coordinate-wise centroid of all positions.
        eb: Energy barrier, the mean NEL.
        best_index: Index of the lowest NEL (ties resolve to the lowest index).
        best_nel: Lowest NEL.
        worst_nel: Highest NEL.
    """

    x_cp: FloatArray
    eb: float
    best_index: int
    best_nel: float
    worst_nel: float


@dataclass(frozen=True, slots=True, eq=False)
class OptResult:
    """Outcome of one optimizer run.

    Attributes:
        best_position: Position of the best particle ever seen.
        best_nel: Its NEL; equal to ``history[-1]``.
        history: Best NEL after initialisation and after every generation.
        evaluations_used: Objective calls made.
        generations: Completed generations after initialisation.
        non_finite_evaluations: Objective values replaced by +inf.
    """

    best_position: FloatArray
    best_nel: float
    history: tuple[float, ...]
    evaluations_used: int
    generations: int = 0
    non_finite_evaluations: int = 0
    seed: int = 0

    def to_payload(self) -> dict[str, object]:
        """Return a JSON-ready summary of the run.

        Returns:
            Mapping with plain Python values.
        """
        return {
            "best_position": [float(value) for value in self.best_position],
            "best_nel": float(self.best_nel),
            "history": [float(value) for value in self.history],
            "evaluations_used": self.evaluations_used,
            "generations": self.generations,
            "non_finite_evaluations": self.non_finite_evaluations,
            "seed": self.seed,
        }


__all__ = [
    "DEFAULT_MAX_FES",
    "DEFAULT_N_PARTICLES",
    "DEFAULT_STABLE_STEP_SCALE",
    "SL_EPSILON",
    "Bounds",
    "BoundsError",
    "EvoConfig",
    "OptResult",
    "OptimizerConfigError",
    "Particle",
    "Population",
    "PopulationError",
    "PopulationStats",
]
