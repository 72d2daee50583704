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

"""Experiment configuration files.

An experiment is described by one JSON document validated with pydantic. The
validated models are converted into the runtime dataclasses the numeric core
consumes (`EvoConfig`, `CostWeights`, `FsValidation`, `PreprocessOptions`).
Relative dataset paths and the output directory resolve against the folder
holding the configuration file.
"""

from __future__ import annotations

import json

# ignore JUSTIFIED: pydantic resolves Path annotations at runtime
from pathlib import Path  # noqa: TC003
from typing import Any, ClassVar, Final, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from evoids.classifiers import ClassifierSpec, default_specs
from evoids.core.model_types import Averaging, DatasetKind, ImputationStrategy, ValidationProtocol
from evoids.data import PreprocessOptions
from evoids.exceptions import EvoidsValidationError
from evoids.json import digest_payload
from evoids.optimizer import EvoConfig
from evoids.optimizer.models import DEFAULT_MAX_FES, DEFAULT_N_PARTICLES, DEFAULT_STABLE_STEP_SCALE
from evoids.seeding import MAX_SEED
from evoids.selection import CostWeights, FsValidation
from evoids.selection.cost import DEFAULT_HOLDOUT_RATIO, MAX_FOLDS

__all__ = [
    "CONFIG_SCHEMA_VERSION",
    "DEFAULT_OUTPUT_DIR",
    "ConfigReadError",
    "ConfigValidationError",
    "DatasetEntryModel",
    "EvoModel",
    "ExperimentConfig",
    "FsModel",
    "GridModel",
    "InvalidConfigFileError",
    "SplitModel",
    "UnsupportedConfigVersionError",
    "WeightsModel",
    "config_digest",
    "load_experiment_config",
]

CONFIG_SCHEMA_VERSION: Final[int] = 1
DEFAULT_OUTPUT_DIR: Final[str] = "evoids-out"


class ConfigValidationError(EvoidsValidationError):
    """Raised when an experiment configuration cannot be used."""


class UnsupportedConfigVersionError(ConfigValidationError):
    """Raised when a configuration file declares an unsupported schema version."""

    def __init__(self, provided: object, expected: int) -> None:
        """Initialise the error with the declared and supported versions."""
        self.provided = provided
        self.expected = expected
        super().__init__(f"Unsupported schema_version {provided!r}; expected {expected}")


class ConfigReadError(ConfigValidationError):
    """Raised when a configuration file cannot be read or is not JSON."""

    def __init__(self, path: Path, error: Exception) -> None:
        """Initialise the error with the file and the underlying failure."""
        self.path = path
        self.error = error
        super().__init__(f"Unable to read {path}: {error}")


class InvalidConfigFileError(ConfigValidationError):
    """Raised when a configuration file fails validation; lists every failing field."""

    def __init__(self, path: Path, error: ValidationError) -> None:
        """Initialise the error from a pydantic validation failure."""
        self.path = path
        self.error = error
        self.fields = [
            (".".join(str(part) for part in item["loc"]) or "<root>", item["msg"]) for item in error.errors()
        ]
        details = "; ".join(f"{location}: {message}" for location, message in self.fields)
        super().__init__(f"Invalid experiment configuration in {path}: {details}")


class _Model(BaseModel):
    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True, extra="forbid")


class DatasetEntryModel(_Model):
    """One dataset of the grid: a report name, its layout and its CSV files."""

    name: str = Field(min_length=1)
    kind: DatasetKind
    paths: list[Path] = Field(min_length=1)

    @field_validator("kind", mode="before")
    @classmethod
    def _parse_kind(cls, value: object) -> object:
        return DatasetKind.from_str(value) if isinstance(value, str) else value


class SplitModel(_Model):
    """Outer train/test split; `seed` falls back to the experiment seed."""

    ratio: float = Field(default=0.8, gt=0.0, lt=1.0)
    seed: int | None = Field(default=None, ge=0, le=MAX_SEED)


class WeightsModel(_Model):
    """Cost weights ``w1`` (error rate), ``w2`` (FPR), ``w3`` (FNR), ``w4`` (feature ratio)."""

    w1: float = Field(default=1.0, ge=0.0)
    w2: float = Field(default=0.0, ge=0.0)
    w3: float = Field(default=0.0, ge=0.0)
    w4: float = Field(default=0.0, ge=0.0)

    @model_validator(mode="after")
    def _positive_error_terms(self) -> WeightsModel:
        if self.w1 + self.w2 + self.w3 <= 0.0:
            msg = "w1 + w2 + w3 must be positive"
            raise ValueError(msg)
        return self

    def to_runtime(self) -> CostWeights:
        return CostWeights(w1=self.w1, w2=self.w2, w3=self.w3, w4=self.w4)


class EvoModel(_Model):
    """Optimizer settings; `seed` falls back to the experiment seed."""

    n_particles: int = Field(default=DEFAULT_N_PARTICLES, ge=2)
    max_fes: int = Field(default=DEFAULT_MAX_FES, ge=2)
    k_neighbors: int | None = Field(default=None, ge=1)
    stable_step_scale: float = Field(default=DEFAULT_STABLE_STEP_SCALE, gt=0.0, le=1.0)
    seed: int | None = Field(default=None, ge=0, le=MAX_SEED)

    @model_validator(mode="after")
    def _budget_covers_population(self) -> EvoModel:
        if self.max_fes < self.n_particles:
            msg = f"max_fes ({self.max_fes}) must be >= n_particles ({self.n_particles})"
            raise ValueError(msg)
        if self.k_neighbors is not None and self.k_neighbors >= self.n_particles:
            msg = f"k_neighbors ({self.k_neighbors}) must be < n_particles ({self.n_particles})"
            raise ValueError(msg)
        return self

    def to_runtime(self, default_seed: int) -> EvoConfig:
        return EvoConfig(
            n_particles=self.n_particles,
            max_fes=self.max_fes,
            k_neighbors=self.k_neighbors,
            seed=self.seed if self.seed is not None else default_seed,
            stable_step_scale=self.stable_step_scale,
        )


class FsModel(_Model):
    """Fitness protocol for feature selection; `inner_seed` None derives one from the optimizer seed."""

    protocol: ValidationProtocol = ValidationProtocol.HOLDOUT
    holdout_ratio: float = Field(default=DEFAULT_HOLDOUT_RATIO, gt=0.0, lt=1.0)
    folds: int = Field(default=5, ge=2, le=MAX_FOLDS)
    inner_seed: int | None = Field(default=None, ge=0, le=MAX_SEED)

    def to_runtime(self) -> FsValidation:
        return FsValidation(protocol=self.protocol, holdout_ratio=self.holdout_ratio, folds=self.folds)


class GridModel(_Model):
    """Which feature-selection arms of the grid run."""

    without_fs: bool = True
    with_fs: bool = True

    @model_validator(mode="after")
    def _at_least_one_arm(self) -> GridModel:
        if not (self.without_fs or self.with_fs):
            msg = "at least one of without_fs / with_fs must be enabled"
            raise ValueError(msg)
        return self

    def arms(self) -> tuple[bool, ...]:
        """Feature-selection flags in report order (baseline first)."""
        return tuple(flag for flag, enabled in ((False, self.without_fs), (True, self.with_fs)) if enabled)


def _default_models() -> dict[str, ClassifierSpec]:
    return dict(default_specs())


class ExperimentConfig(_Model):
    """Full description of a before/after feature-selection experiment grid."""

    schema_version: Literal[1] = CONFIG_SCHEMA_VERSION
    datasets: list[DatasetEntryModel] = Field(min_length=1)
    n_per_label: int | Literal["auto"] = "auto"
    split: SplitModel = Field(default_factory=SplitModel)
    models: dict[str, ClassifierSpec] = Field(default_factory=_default_models)
    weights: WeightsModel = Field(default_factory=WeightsModel)
    evo: EvoModel = Field(default_factory=EvoModel)
    fs: FsModel = Field(default_factory=FsModel)
    grid: GridModel = Field(default_factory=GridModel)
    imputation: ImputationStrategy = ImputationStrategy.MEDIAN
    encode_nominal: bool = False
    averaging: Averaging = Averaging.MACRO
    strict_scaling: bool = False
    seed: int = Field(default=0, ge=0, le=MAX_SEED)
    output_dir: Path = Path(DEFAULT_OUTPUT_DIR)

    @field_validator("n_per_label")
    @classmethod
    def _positive_cap(cls, value: int | str) -> int | str:
        if isinstance(value, int) and value < 1:
            msg = "n_per_label must be >= 1 or 'auto'"
            raise ValueError(msg)
        return value

    @model_validator(mode="after")
    def _unique_names(self) -> ExperimentConfig:
        names = [entry.name for entry in self.datasets]
        duplicates = sorted({name for name in names if names.count(name) > 1})
        if duplicates:
            msg = f"dataset names must be unique (duplicated: {', '.join(duplicates)})"
            raise ValueError(msg)
        if not self.models:
            msg = "models must name at least one classifier"
            raise ValueError(msg)
        return self

    @property
    def split_seed(self) -> int:
        return self.split.seed if self.split.seed is not None else self.seed

    def evo_config(self) -> EvoConfig:
        return self.evo.to_runtime(self.seed)

    def preprocess_options(self) -> PreprocessOptions:
        return PreprocessOptions(imputation=self.imputation, encode_nominal=self.encode_nominal, scale=False)

    def resolve_paths(self, base_dir: Path) -> ExperimentConfig:
        """Return a copy with relative paths anchored at `base_dir`."""

        def anchor(path: Path) -> Path:
            return path if path.is_absolute() else (base_dir / path).resolve()

        datasets = [
            entry.model_copy(update={"paths": [anchor(path) for path in entry.paths]}) for entry in self.datasets
        ]
        return self.model_copy(update={"datasets": datasets, "output_dir": anchor(self.output_dir)})


def config_digest(config: ExperimentConfig) -> str:
    """SHA-256 of the settings that determine results (the output directory is excluded)."""
    payload: dict[str, Any] = config.model_dump(mode="json", exclude={"output_dir"})
    for entry in payload["datasets"]:
        entry["paths"] = [Path(path).name for path in entry["paths"]]
    return digest_payload(payload)


def load_experiment_config(path: Path) -> ExperimentConfig:
    """Read, validate and anchor an experiment configuration file.

    Raises:
        ConfigReadError: If the file is unreadable or not valid JSON.
        UnsupportedConfigVersionError: If ``schema_version`` is not supported.
        InvalidConfigFileError: If any field fails validation.
    """
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ConfigReadError(path, exc) from exc
    if isinstance(raw, dict) and raw.get("schema_version", CONFIG_SCHEMA_VERSION) != CONFIG_SCHEMA_VERSION:
        raise UnsupportedConfigVersionError(raw["schema_version"], CONFIG_SCHEMA_VERSION)
    try:
        config = ExperimentConfig.model_validate(raw)
    except ValidationError as exc:
        raise InvalidConfigFileError(path, exc) from exc
    return config.resolve_paths(path.parent.resolve())
