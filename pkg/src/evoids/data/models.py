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

"""Data-layer types: raw tables, datasets, splits, provenance and data errors."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, ClassVar, Final

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from evoids.core.model_types import DatasetKind
from evoids.exceptions import EvoidsDataError

if TYPE_CHECKING:
    from collections.abc import Sequence

    from evoids.core.type_aliases import BoolArray, FloatArray, IntArray

__all__ = [
    "CacheFormatError",
    "CsvParseError",
    "Dataset",
    "DatasetValueError",
    "EmptyDatasetError",
    "Provenance",
    "RawTable",
    "SchemaError",
    "SplitPair",
    "StratificationError",
]

_PREVIEW_LIMIT: Final[int] = 8


def _preview(names: Sequence[str]) -> str:
    shown = ", ".join(names[:_PREVIEW_LIMIT])
    if len(names) > _PREVIEW_LIMIT:
        shown += f", ... (+{len(names) - _PREVIEW_LIMIT} more)"
    return shown


class CsvParseError(EvoidsDataError):
    """Raised when a CSV file cannot be parsed into a rectangular table."""

    def __init__(self, path: Path, line: int | None, reason: str) -> None:
        """Initialise the error.

        Args:
            path: File being parsed.
            line: One-based physical line number, when known.
            reason: Parser diagnostic.
        """
        self.path = path
        self.line = line
        self.reason = reason
        location = f"{path}:{line}" if line is not None else str(path)
        super().__init__(f"Cannot parse {location}: {reason}")


class SchemaError(EvoidsDataError):
    """Raised when a header or column content does not match the expected layout."""

    def __init__(
        self,
        reason: str,
        *,
        missing: Sequence[str] = (),
        extra: Sequence[str] = (),
        path: Path | None = None,
    ) -> None:
        """Initialise the error.

        Args:
            reason: Short description of the mismatch.
            missing: Expected columns that were absent.
            extra: Columns that were not expected.
            path: File the header came from, when applicable.
        """
        self.reason = reason
        self.missing = tuple(missing)
        self.extra = tuple(extra)
        self.path = path
        parts = [f"{path}: {reason}" if path is not None else reason]
        if self.missing:
            parts.append(f"missing columns: {_preview(self.missing)}")
        if self.extra:
            parts.append(f"unexpected columns: {_preview(self.extra)}")
        super().__init__("; ".join(parts))


class StratificationError(EvoidsDataError):
    """Raised when a class has too few rows to be split."""

    def __init__(self, class_name: str, count: int, required: int = 2) -> None:
        """Initialise the error.

        Args:
            class_name: Offending class.
            count: Rows available for the class.
            required: Minimum rows needed.
        """
        self.class_name = class_name
        self.count = count
        self.required = required
        super().__init__(f"Class '{class_name}' has {count} row(s); at least {required} are required to stratify")


class EmptyDatasetError(EvoidsDataError):
    """Raised when a processing stage leaves no rows."""

    def __init__(self, stage: str) -> None:
        """Initialise the error with the stage that emptied the data."""
        self.stage = stage
        super().__init__(f"No rows remain after {stage}")


class DatasetValueError(EvoidsDataError):
    """Raised when dataset arrays are inconsistent (shape, label range, finiteness)."""


class CacheFormatError(EvoidsDataError):
    """Raised when a dataset cache file is unreadable or has an unknown version."""

    def __init__(self, path: Path, reason: str) -> None:
        """Initialise the error.

        Args:
            path: Cache file.
            reason: What was wrong with it.
        """
        self.path = path
        self.reason = reason
        super().__init__(f"Unusable dataset cache {path}: {reason}")


@dataclass(frozen=True, slots=True)
class RawTable:
    """Concatenated text cells of one or more CSV files.

    Attributes:
        frame: String-typed cells; column labels are the normalised header.
        kind: Layout the header was validated against.
        sources: Input files in concatenation order.
        deviations: Header deviations from the registry that were tolerated.
    """

    frame: pd.DataFrame
    kind: DatasetKind
    sources: tuple[Path, ...] = ()
    deviations: tuple[str, ...] = ()

    @property
    def columns(self) -> tuple[str, ...]:
        """Column names in file order."""
        return tuple(str(name) for name in self.frame.columns)

    @property
    def n_rows(self) -> int:
        """Row count."""
        return len(self.frame)


class Provenance(BaseModel):
    """Record of every transformation applied to a dataset.

    Serialised as the JSON sidecar next to cached datasets and embedded in
    experiment outputs.
    """

    model_config: ClassVar[ConfigDict] = ConfigDict(extra="forbid")

    sources: list[str] = Field(default_factory=list)
    kind: DatasetKind = DatasetKind.GENERIC
    dropped_columns: list[str] = Field(default_factory=list)
    encoded_columns: dict[str, list[str]] = Field(default_factory=dict)
    parse_failures: dict[str, int] = Field(default_factory=dict)
    imputation: str | None = None
    imputed_counts: dict[str, int] = Field(default_factory=dict)
    duplicates_removed: int = 0
    label_map: dict[str, int] = Field(default_factory=dict)
    scaler_params: dict[str, tuple[float, float]] = Field(default_factory=dict)
    row_counts: dict[str, int] = Field(default_factory=dict)
    header_deviations: list[str] = Field(default_factory=list)
    actions: list[str] = Field(default_factory=list)

    def derive(self, action: str, **updates: object) -> Provenance:
        """Return a deep copy with `updates` applied and `action` appended to the log."""
        derived = self.model_copy(deep=True, update=updates)
        derived.actions.append(action)
        return derived


def _empty_provenance() -> Provenance:
    return Provenance()


@dataclass(frozen=True, slots=True, eq=False)
class Dataset:
    """Numeric feature matrix with dense integer labels.

    Attributes:
        features: ``(n_rows, n_features)`` matrix.
        labels: ``(n_rows,)`` class ids in ``[0, len(class_names))``.
        feature_names: One name per column.
        class_names: Display name per class id.
        provenance: Transformation log.
    """

    features: FloatArray
    labels: IntArray
    feature_names: tuple[str, ...]
    class_names: tuple[str, ...]
    provenance: Provenance = field(default_factory=_empty_provenance)

    def __post_init__(self) -> None:
        features = np.array(self.features, dtype=np.float64)
        labels = np.array(self.labels, dtype=np.int64)
        if features.ndim != 2 or labels.ndim != 1 or features.shape[0] != labels.shape[0]:  # noqa: PLR2004
            msg = f"features {features.shape} and labels {labels.shape} are not aligned"
            raise DatasetValueError(msg)
        if features.shape[1] != len(self.feature_names):
            msg = f"{features.shape[1]} feature columns but {len(self.feature_names)} feature names"
            raise DatasetValueError(msg)
        if labels.size and (labels.min() < 0 or labels.max() >= len(self.class_names)):
            msg = f"labels must lie in [0, {len(self.class_names)})"
            raise DatasetValueError(msg)
        if not np.all(np.isfinite(features)):
            msg = "feature values must be finite"
            raise DatasetValueError(msg)
        features.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "feature_names", tuple(self.feature_names))
        object.__setattr__(self, "class_names", tuple(self.class_names))

    @property
    def n_rows(self) -> int:
        """Row count."""
        return int(self.labels.shape[0])

    @property
    def n_features(self) -> int:
        """Feature column count."""
        return int(self.features.shape[1])

    @property
    def n_classes(self) -> int:
        """Number of declared classes (some may have zero rows after subsetting)."""
        return len(self.class_names)

    def class_counts(self) -> dict[str, int]:
        """Return rows per class name, in class-id order."""
        counts = np.bincount(self.labels, minlength=self.n_classes)
        return {name: int(counts[index]) for index, name in enumerate(self.class_names)}

    def take(self, rows: IntArray | Sequence[int], *, action: str | None = None) -> Dataset:
        """Return the rows at `rows` (in that order), keeping every class name."""
        index = np.asarray(rows, dtype=np.int64)
        provenance = self.provenance if action is None else self.provenance.derive(action)
        return Dataset(self.features[index], self.labels[index], self.feature_names, self.class_names, provenance)

    def select(self, mask: BoolArray | Sequence[bool]) -> Dataset:
        """Return the dataset restricted to the columns where `mask` is true."""
        bits = np.asarray(mask, dtype=bool)
        if bits.shape != (self.n_features,):
            msg = f"mask length {bits.size} does not match {self.n_features} features"
            raise DatasetValueError(msg)
        names = tuple(name for name, keep in zip(self.feature_names, bits, strict=True) if keep)
        return Dataset(self.features[:, bits], self.labels, names, self.class_names, self.provenance)

    def with_features(self, features: FloatArray, *, action: str, **updates: object) -> Dataset:
        """Return a copy with a replacement feature matrix and a provenance entry."""
        return Dataset(
            features,
            self.labels,
            self.feature_names,
            self.class_names,
            self.provenance.derive(action, **updates),
        )

    def to_raw_table(self) -> RawTable:
        """Render the dataset back into a generic text table.

        Values use `repr` so parsing the table reproduces the matrix exactly.
        """
        columns = {
            name: [repr(float(value)) for value in self.features[:, index]]
            for index, name in enumerate(self.feature_names)
        }
        frame = pd.DataFrame(columns, dtype=str)
        frame["Label"] = [self.class_names[label] for label in self.labels]
        return RawTable(frame=frame, kind=DatasetKind.GENERIC)


@dataclass(frozen=True, slots=True)
class SplitPair:
    """Stratified train/test partition of one dataset."""

    train: Dataset
    test: Dataset
    ratio: float
    seed: int
    train_rows: IntArray
    test_rows: IntArray
