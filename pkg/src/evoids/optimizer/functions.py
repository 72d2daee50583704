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

"""Closed-form test functions with a known minimum of 0."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Final

import numpy as np

from evoids.core.model_types import BenchFunction
from evoids.exceptions import EvoidsValidationError

from .models import Bounds, OptimizerConfigError

if TYPE_CHECKING:
    from evoids.core.type_aliases import FloatArray, Objective

RASTRIGIN_A: Final[float] = 10.0


class UnknownBenchFunctionError(EvoidsValidationError):
    """Raised when a benchmark function name is not registered."""

    def __init__(self, name: str) -> None:
        """Initialise the error with the rejected name."""
        self.name = name
        allowed = ", ".join(member.value for member in BenchFunction)
        super().__init__(f"Unknown benchmark function '{name}' (expected one of: {allowed})")


def sphere(x: FloatArray) -> float:
    """Sum of squares; minimum 0 at the origin."""
    return float(np.dot(x, x))


def rastrigin(x: FloatArray) -> float:
    """Highly multimodal function; minimum 0 at the origin."""
    return float(RASTRIGIN_A * x.size + np.sum(x * x - RASTRIGIN_A * np.cos(2.0 * np.pi * x)))


def rosenbrock(x: FloatArray) -> float:
    """Curved-valley function; minimum 0 at ``(1, ..., 1)``."""
    head = x[:-1]
    tail = x[1:]
    return float(np.sum(100.0 * (tail - head * head) ** 2 + (1.0 - head) ** 2))


@dataclass(frozen=True, slots=True)
class TestFunction:
    """A named objective with its conventional search box.

    Attributes:
        name: Registry key.
        objective: The function itself.
        lo: Conventional lower bound shared by every dimension.
        hi: Conventional upper bound shared by every dimension.
        min_dims: Smallest dimensionality for which the function is meaningful.
    """

    __test__ = False

    name: BenchFunction
    objective: Objective
    lo: float
    hi: float
    min_dims: int = 1

    def bounds(self, dims: int) -> Bounds:
        """Return the conventional bounds in `dims` dimensions.

        Raises:
            OptimizerConfigError: If `dims` is below `min_dims`.
        """
        if dims < self.min_dims:
            raise OptimizerConfigError("dims", f"must be >= {self.min_dims} for {self.name} (got {dims})")
        return Bounds.uniform(dims, self.lo, self.hi)


TEST_FUNCTIONS: Final[dict[BenchFunction, TestFunction]] = {
    BenchFunction.SPHERE: TestFunction(BenchFunction.SPHERE, sphere, -5.12, 5.12),
    BenchFunction.RASTRIGIN: TestFunction(BenchFunction.RASTRIGIN, rastrigin, -5.12, 5.12),
    BenchFunction.ROSENBROCK: TestFunction(BenchFunction.ROSENBROCK, rosenbrock, -5.0, 10.0, min_dims=2),
}


def get_test_function(name: BenchFunction | str) -> TestFunction:
    """Look up a registered test function by enum or name.

    Raises:
        UnknownBenchFunctionError: If `name` is not registered.
    """
    if isinstance(name, BenchFunction):
        return TEST_FUNCTIONS[name]
    try:
        key = BenchFunction.from_str(name)
    except ValueError as exc:
        raise UnknownBenchFunctionError(name) from exc
    return TEST_FUNCTIONS[key]


__all__ = [
    "RASTRIGIN_A",
    "TEST_FUNCTIONS",
    "TestFunction",
    "UnknownBenchFunctionError",
    "get_test_function",
    "rastrigin",
    "rosenbrock",
    "sphere",
]
