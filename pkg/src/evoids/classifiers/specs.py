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

"""Classifier specifications.

A `ClassifierSpec` is a pydantic discriminated union on ``kind`` so the same
definition validates experiment configs, serialised models and CLI
``--param key=value`` overrides.
"""

from __future__ import annotations

import math
from typing import Annotated, ClassVar, Final, Literal, TypeAlias

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError, field_validator, model_validator

from evoids.core.model_types import ClassifierKind
from evoids.exceptions import EvoidsValidationError

__all__ = [
    "DEFAULT_MODEL_NAMES",
    "CartSpec",
    "ClassifierSpec",
    "ClassifierSpecError",
    "KnnSpec",
    "RfSpec",
    "SvmSpec",
    "default_specs",
    "parse_classifier_spec",
    "resolve_subsample",
    "spec_from_params",
]

_UNLIMITED: Final[frozenset[str]] = frozenset({"none", "null", "all", "unlimited", ""})


class ClassifierSpecError(EvoidsValidationError):
    """Raised when classifier hyperparameters fail validation."""

    def __init__(self, kind: str, reason: str) -> None:
        """Initialise the error.

        Args:
            kind: Classifier kind being configured.
            reason: Field-level diagnostic.
        """
        self.kind = kind
        self.reason = reason
        super().__init__(f"Invalid {kind} classifier spec: {reason}")


def _unlimited_to_none(value: object) -> object:
    if isinstance(value, str) and value.strip().lower() in _UNLIMITED:
        return None
    return value


class _SpecBase(BaseModel):
    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True, extra="forbid")


class KnnSpec(_SpecBase):
    """k-nearest-neighbours vote over Euclidean distance."""

    kind: Literal[ClassifierKind.KNN] = ClassifierKind.KNN
    k: int = Field(default=5, ge=1)


class CartSpec(_SpecBase):
    """Gini-impurity decision tree.

    Attributes:
        max_depth: Depth limit; None for unlimited, 0 for a single leaf.
        min_samples_split: Smallest node that may be split.
        min_samples_leaf: Smallest allowed child.
        max_features: Features examined per split (random subset); None for all.
    """

    kind: Literal[ClassifierKind.CART] = ClassifierKind.CART
    max_depth: int | None = Field(default=None, ge=0)
    min_samples_split: int = Field(default=2, ge=2)
    min_samples_leaf: int = Field(default=1, ge=1)
    max_features: int | None = Field(default=None, ge=1)

    @field_validator("max_depth", "max_features", mode="before")
    @classmethod
    def _parse_unlimited(cls, value: object) -> object:
        return _unlimited_to_none(value)


class RfSpec(_SpecBase):
    """Bagged CART ensemble with per-split feature subsampling.

    Attributes:
        n_trees: Ensemble size.
        feature_subsample: ``"sqrt"`` for ``ceil(sqrt(d))``, ``"all"``, or a count.
        bootstrap: Resample rows with replacement for every tree.
        seed: Ensemble seed; None uses the seed passed to training.
    """

    kind: Literal[ClassifierKind.RF] = ClassifierKind.RF
    n_trees: int = Field(default=100, ge=1)
    max_depth: int | None = Field(default=None, ge=0)
    min_samples_split: int = Field(default=2, ge=2)
    min_samples_leaf: int = Field(default=1, ge=1)
    bootstrap: bool = True
    feature_subsample: int | Literal["sqrt", "all"] = "sqrt"
    seed: int | None = Field(default=None, ge=0)

    @field_validator("max_depth", mode="before")
    @classmethod
    def _parse_unlimited(cls, value: object) -> object:
        return _unlimited_to_none(value)

    @field_validator("feature_subsample", mode="before")
    @classmethod
    def _parse_subsample(cls, value: object) -> object:
        if isinstance(value, str):
            lowered = value.strip().lower()
            if lowered in {"sqrt", "all"}:
                return lowered
            if lowered.isdigit():
                return int(lowered)
        return value

    @model_validator(mode="after")
    def _positive_subsample(self) -> RfSpec:
        if isinstance(self.feature_subsample, int) and self.feature_subsample < 1:
            msg = "feature_subsample must be >= 1, 'sqrt' or 'all'"
            raise ValueError(msg)
        return self

    def tree_spec(self) -> CartSpec:
        """Return the CART parameters shared by every tree."""
        return CartSpec(
            max_depth=self.max_depth,
            min_samples_split=self.min_samples_split,
            min_samples_leaf=self.min_samples_leaf,
        )


class SvmSpec(_SpecBase):
    """RBF-kernel soft-margin SVM trained by sequential minimal optimisation.

    Attributes:
        c: Box constraint on the dual coefficients.
        gamma: RBF width; None for ``1 / n_features``.
        tolerance: KKT violation tolerance.
        max_passes: Cap on passes over the training set; None for ``10 * n_rows``.
    """

    kind: Literal[ClassifierKind.SVM] = ClassifierKind.SVM
    c: float = Field(default=1.0, gt=0.0)
    gamma: float | None = Field(default=None, gt=0.0)
    tolerance: float = Field(default=1e-3, gt=0.0)
    max_passes: int | None = Field(default=None, ge=1)

    @field_validator("gamma", "max_passes", mode="before")
    @classmethod
    def _parse_auto(cls, value: object) -> object:
        if isinstance(value, str) and value.strip().lower() == "auto":
            return None
        return _unlimited_to_none(value)


ClassifierSpec: TypeAlias = Annotated[KnnSpec | CartSpec | RfSpec | SvmSpec, Field(discriminator="kind")]
_SPEC_ADAPTER: Final[TypeAdapter[KnnSpec | CartSpec | RfSpec | SvmSpec]] = TypeAdapter(ClassifierSpec)

DEFAULT_MODEL_NAMES: Final[dict[ClassifierKind, str]] = {
    ClassifierKind.SVM: "SVM",
    ClassifierKind.KNN: "KNN",
    ClassifierKind.RF: "RF",
    ClassifierKind.CART: "D_Tree",
}


def _describe(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "spec"
        parts.append(f"{location}: {item['msg']}")
    return "; ".join(parts)


def parse_classifier_spec(payload: object) -> KnnSpec | CartSpec | RfSpec | SvmSpec:
    """Validate a mapping such as ``{"kind": "knn", "k": 3}``.

    Raises:
        ClassifierSpecError: With one entry per failing field.
    """
    try:
        return _SPEC_ADAPTER.validate_python(payload)
    except ValidationError as exc:
        kind = payload.get("kind", "unknown") if isinstance(payload, dict) else "unknown"
        raise ClassifierSpecError(str(kind), _describe(exc)) from exc


def spec_from_params(kind: ClassifierKind | str, params: dict[str, str]) -> KnnSpec | CartSpec | RfSpec | SvmSpec:
    """Build a spec from a kind and textual ``key=value`` overrides."""
    resolved = kind if isinstance(kind, ClassifierKind) else ClassifierKind.from_str(kind)
    payload: dict[str, object] = {key.strip().replace("-", "_"): value.strip() for key, value in params.items()}
    payload["kind"] = resolved.value
    return parse_classifier_spec(payload)


def default_specs() -> dict[str, KnnSpec | CartSpec | RfSpec | SvmSpec]:
    """Return the four reference classifiers with default hyperparameters, keyed by report name."""
    return {
        DEFAULT_MODEL_NAMES[ClassifierKind.SVM]: SvmSpec(),
        DEFAULT_MODEL_NAMES[ClassifierKind.KNN]: KnnSpec(),
        DEFAULT_MODEL_NAMES[ClassifierKind.RF]: RfSpec(),
        DEFAULT_MODEL_NAMES[ClassifierKind.CART]: CartSpec(),
    }


def resolve_subsample(feature_subsample: int | Literal["sqrt", "all"], n_features: int) -> int | None:
    """Return the per-split feature count, or None when every feature is used."""
    if feature_subsample == "all":
        return None
    count = math.ceil(math.sqrt(n_features)) if feature_subsample == "sqrt" else int(feature_subsample)
    return None if count >= n_features else max(1, count)
