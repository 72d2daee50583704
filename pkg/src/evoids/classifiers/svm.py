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

"""RBF-kernel support vector machine trained by simplified SMO.

The solver keeps an error cache ``E_k = f(x_k) - y_k`` and updates it from two
kernel rows after every successful pair step, so the full kernel matrix is
never materialised. A KKT violator is paired with a random partner drawn from
the machine's own substream; when a random pass changes nothing, a sweep tries
every partner in index order, and only a sweep that also changes nothing
counts as convergence. Two classes train a single machine (class 1 positive);
more classes train one machine per class against the rest.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, ClassVar, Final

import numpy as np

from evoids.core.model_types import ClassifierKind, LogComponent
from evoids.logging import structured_extra
from evoids.seeding import stream, tag

from .base import TrainedModel, readonly

if TYPE_CHECKING:
    from evoids.core.type_aliases import FloatArray, IntArray

    from .specs import SvmSpec

logger: logging.Logger = logging.getLogger("evoids.classifiers")

__all__ = [
    "SmoResult",
    "SvmMachine",
    "SvmModel",
    "dual_objective",
    "fit_svm",
    "rbf_kernel",
    "solve_smo",
]

# Smallest alpha_j move accepted as progress.
MIN_ALPHA_STEP: Final[float] = 1e-5
_BLOCK_CELLS: Final[int] = 4_000_000


def rbf_kernel(left: FloatArray, right: FloatArray, gamma: float) -> FloatArray:
    """Return ``exp(-gamma * ||a - b||**2)`` for every row pair of `left` and `right`."""
    rows_per_block = max(1, _BLOCK_CELLS // max(1, right.shape[0] * right.shape[1]))
    out = np.empty((left.shape[0], right.shape[0]), dtype=np.float64)
    for start in range(0, left.shape[0], rows_per_block):
        block = left[start : start + rows_per_block]
        offsets = block[:, np.newaxis, :] - right[np.newaxis, :, :]
        out[start : start + block.shape[0]] = np.exp(-gamma * np.einsum("qnd,qnd->qn", offsets, offsets))
    return out


def dual_objective(alphas: FloatArray, targets: FloatArray, features: FloatArray, gamma: float) -> float:
    """Soft-margin dual ``sum(a) - 0.5 * sum_ij a_i a_j y_i y_j K_ij`` (to be maximised)."""
    weighted = alphas * targets
    kernel = rbf_kernel(features, features, gamma)
    return float(np.sum(alphas) - 0.5 * weighted @ kernel @ weighted)


@dataclass(frozen=True, slots=True)
class SmoResult:
    """Raw solver output for one binary machine."""

    alphas: FloatArray
    bias: float
    converged: bool
    passes: int


class _SmoState:
    def __init__(self, features: FloatArray, targets: FloatArray, c: float, gamma: float) -> None:
        self.features = features
        self.targets = targets
        self.c = c
        self.gamma = gamma
        self.alphas = np.zeros(targets.size, dtype=np.float64)
        self.bias = 0.0
        self.errors = -targets.astype(np.float64)

    def kernel(self, i: int, j: int) -> float:
        offset = self.features[i] - self.features[j]
        return float(np.exp(-self.gamma * np.dot(offset, offset)))

    def kernel_row(self, i: int) -> FloatArray:
        offsets = self.features - self.features[i]
        return np.exp(-self.gamma * np.einsum("nd,nd->n", offsets, offsets))

    def violates_kkt(self, i: int, tolerance: float) -> bool:
        margin = self.targets[i] * self.errors[i]
        return bool((margin < -tolerance and self.alphas[i] < self.c) or (margin > tolerance and self.alphas[i] > 0.0))

    def take_step(self, i: int, j: int) -> bool:
        y_i, y_j = self.targets[i], self.targets[j]
        a_i, a_j = self.alphas[i], self.alphas[j]
        e_i, e_j = self.errors[i], self.errors[j]
        if y_i != y_j:
            low, high = max(0.0, a_j - a_i), min(self.c, self.c + a_j - a_i)
        else:
            low, high = max(0.0, a_i + a_j - self.c), min(self.c, a_i + a_j)
        if low >= high:
            return False
        k_ij = self.kernel(i, j)
        # K_ii = K_jj = 1 for the RBF kernel.
        eta = 2.0 * k_ij - 2.0
        if eta >= 0.0:
            return False
        new_a_j = min(high, max(low, a_j - y_j * (e_i - e_j) / eta))
        if abs(new_a_j - a_j) < MIN_ALPHA_STEP:
            return False
        new_a_i = min(self.c, max(0.0, a_i + y_i * y_j * (a_j - new_a_j)))
        delta_i = (new_a_i - a_i) * y_i
        delta_j = (new_a_j - a_j) * y_j
        b1 = self.bias - e_i - delta_i - delta_j * k_ij
        b2 = self.bias - e_j - delta_i * k_ij - delta_j
        if 0.0 < new_a_i < self.c:
            new_bias = b1
        elif 0.0 < new_a_j < self.c:
            new_bias = b2
        else:
            new_bias = (b1 + b2) / 2.0
        self.errors += delta_i * self.kernel_row(i) + delta_j * self.kernel_row(j) + (new_bias - self.bias)
        self.alphas[i] = new_a_i
        self.alphas[j] = new_a_j
        self.bias = new_bias
        return True


def solve_smo(  # noqa: PLR0913
    features: FloatArray,
    targets: FloatArray,
    *,
    c: float,
    gamma: float,
    tolerance: float,
    max_passes: int,
    rng: np.random.Generator,
) -> SmoResult:
    """Solve the binary soft-margin dual.

    Args:
        features: ``(n, d)`` training matrix, ``n >= 2``.
        targets: ``(n,)`` labels in ``{-1, +1}``.
        c: Box constraint.
        gamma: RBF width.
        tolerance: KKT tolerance.
        max_passes: Cap on passes over the training set.
        rng: Source of random partners.

    Returns:
        Dual coefficients in ``[0, c]``, bias and convergence status.
    """
    state = _SmoState(features, targets, c, gamma)
    n_rows = targets.size
    passes = 0
    sweeping = False
    converged = False
    while passes < max_passes:
        passes += 1
        changed = 0
        for i in range(n_rows):
            if not state.violates_kkt(i, tolerance):
                continue
            if sweeping:
                partners = (i + 1 + np.arange(n_rows - 1)) % n_rows
            else:
                partner = int(rng.integers(0, n_rows - 1))
                partners = np.array([partner + 1 if partner >= i else partner])
            for j in partners:
                if state.take_step(i, int(j)):
                    changed += 1
                    break
        if changed == 0:
            if sweeping:
                converged = True
                break
            sweeping = True
        else:
            sweeping = False
    return SmoResult(alphas=state.alphas, bias=state.bias, converged=converged, passes=passes)


@dataclass(frozen=True, slots=True)
class SvmMachine:
    """One binary machine: `positive_class` against everything else.

    Attributes:
        positive_class: Class id mapped to target ``+1``.
        support_vectors: Rows with a non-zero dual coefficient.
        coef: ``alpha * y`` for each support vector.
        bias: Decision offset.
        converged: Whether the solver met the KKT tolerance.
    """

    positive_class: int
    support_vectors: FloatArray
    coef: FloatArray
    bias: float
    converged: bool

    def decision(self, features: FloatArray, gamma: float) -> FloatArray:
        if self.coef.size == 0:
            return np.full(features.shape[0], self.bias, dtype=np.float64)
        return rbf_kernel(features, self.support_vectors, gamma) @ self.coef + self.bias

    def to_state(self) -> dict[str, Any]:
        return {
            "positive_class": self.positive_class,
            "support_vectors": self.support_vectors.tolist(),
            "coef": self.coef.tolist(),
            "bias": self.bias,
            "converged": self.converged,
        }

    @classmethod
    def from_state(cls, state: dict[str, Any], n_features: int) -> SvmMachine:
        coef = np.asarray(state["coef"], dtype=np.float64)
        vectors = np.asarray(state["support_vectors"], dtype=np.float64).reshape(coef.size, n_features)
        return cls(
            positive_class=int(state["positive_class"]),
            support_vectors=readonly(vectors),
            coef=readonly(coef),
            bias=float(state["bias"]),
            converged=bool(state["converged"]),
        )


@dataclass(frozen=True, slots=True, kw_only=True)
class SvmModel(TrainedModel):
    """Fitted RBF SVM.

    `constant_class` is set when training saw a single class; classes without
    training rows never win a one-vs-rest vote.
    """

    kind: ClassVar[ClassifierKind] = ClassifierKind.SVM

    gamma: float
    machines: tuple[SvmMachine, ...]
    constant_class: int | None = None

    @property
    def converged(self) -> bool:
        return all(machine.converged for machine in self.machines)

    def decision_values(self, features: FloatArray) -> FloatArray:
        """Return an ``(n, n_classes)`` score matrix; the prediction is its row argmax."""
        scores = np.full((features.shape[0], self.n_classes), -np.inf, dtype=np.float64)
        if self.constant_class is not None:
            scores[:, self.constant_class] = 0.0
            return scores
        if self.n_classes == 2 and len(self.machines) == 1:  # noqa: PLR2004
            values = self.machines[0].decision(features, self.gamma)
            scores[:, 0] = -values
            scores[:, 1] = values
            return scores
        for machine in self.machines:
            scores[:, machine.positive_class] = machine.decision(features, self.gamma)
        return scores

    def _predict(self, features: FloatArray) -> IntArray:
        return np.argmax(self.decision_values(features), axis=1)

    def state(self) -> dict[str, Any]:
        return {
            "gamma": self.gamma,
            "constant_class": self.constant_class,
            "machines": [machine.to_state() for machine in self.machines],
        }

    @classmethod
    def from_state(cls, state: dict[str, Any], *, n_features: int, n_classes: int, train_time: float) -> SvmModel:
        constant = state.get("constant_class")
        return cls(
            n_features=n_features,
            n_classes=n_classes,
            train_time=train_time,
            gamma=float(state["gamma"]),
            machines=tuple(SvmMachine.from_state(machine, n_features) for machine in state["machines"]),
            constant_class=None if constant is None else int(constant),
        )


def _train_machine(  # noqa: PLR0913
    features: FloatArray,
    labels: IntArray,
    positive_class: int,
    spec: SvmSpec,
    gamma: float,
    max_passes: int,
    seed: int,
) -> SvmMachine:
    targets = np.where(labels == positive_class, 1.0, -1.0)
    result = solve_smo(
        features,
        targets,
        c=spec.c,
        gamma=gamma,
        tolerance=spec.tolerance,
        max_passes=max_passes,
        rng=stream(seed, tag("svm"), positive_class),
    )
    support = np.nonzero(result.alphas > 0.0)[0]
    if not result.converged:
        logger.warning(
            "SMO stopped after %d passes without meeting tolerance %g (class %d)",
            result.passes,
            spec.tolerance,
            positive_class,
            extra=structured_extra(component=LogComponent.CLASSIFIER, model=ClassifierKind.SVM.value, seed=seed),
        )
    return SvmMachine(
        positive_class=positive_class,
        support_vectors=readonly(features[support].copy()),
        coef=readonly(result.alphas[support] * targets[support]),
        bias=result.bias,
        converged=result.converged,
    )


def fit_svm(spec: SvmSpec, features: FloatArray, labels: IntArray, n_classes: int, *, seed: int) -> SvmModel:
    """Train one machine for two classes, one per present class otherwise."""
    n_rows, n_features = features.shape
    gamma = spec.gamma if spec.gamma is not None else 1.0 / n_features
    max_passes = spec.max_passes if spec.max_passes is not None else 10 * n_rows
    present = [int(label) for label in np.unique(labels)]
    if len(present) == 1:
        return SvmModel(
            n_features=n_features,
            n_classes=n_classes,
            gamma=gamma,
            machines=(),
            constant_class=present[0],
        )
    positives = [1] if n_classes == 2 else present  # noqa: PLR2004
    machines = tuple(
        _train_machine(features, labels, positive, spec, gamma, max_passes, seed) for positive in positives
    )
    return SvmModel(n_features=n_features, n_classes=n_classes, gamma=gamma, machines=machines)
