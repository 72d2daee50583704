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

"""Exploratory summaries of raw tables and prepared datasets."""

from __future__ import annotations

from collections import Counter
from typing import TYPE_CHECKING, ClassVar

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict

from .preprocess import encode_labels, parse_numeric_column
from .schema import schema_for

if TYPE_CHECKING:
    from .models import Dataset, RawTable

__all__ = ["ColumnStats", "DatasetSummary", "describe_dataset", "describe_table"]


class ColumnStats(BaseModel):
    """Summary of one column; numeric fields are None when nothing parsed."""

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True, extra="forbid")

    name: str
    min: float | None
    max: float | None
    mean: float | None
    missing: int
    non_numeric: int = 0


class DatasetSummary(BaseModel):
    """Class counts and per-column statistics."""

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True, extra="forbid")

    rows: int
    columns: int
    class_counts: dict[str, int]
    column_stats: list[ColumnStats]

    def column_frame(self) -> pd.DataFrame:
        """Return the column statistics as a table (one row per column)."""
        return pd.DataFrame([stats.model_dump() for stats in self.column_stats])


def _stats(name: str, values: np.ndarray, non_numeric: int = 0) -> ColumnStats:
    observed = values[~np.isnan(values)]
    if observed.size == 0:
        return ColumnStats(name=name, min=None, max=None, mean=None, missing=int(values.size), non_numeric=non_numeric)
    return ColumnStats(
        name=name,
        min=float(observed.min()),
        max=float(observed.max()),
        mean=float(observed.mean()),
        missing=int(values.size - observed.size),
        non_numeric=non_numeric,
    )


def describe_table(raw: RawTable) -> DatasetSummary:
    """Summarise a raw table before any cleaning.

    Missing counts include cells holding ``Infinity``/``NaN``/empty text and
    cells that failed to parse; the latter are also reported as `non_numeric`.
    """
    label = schema_for(raw.kind).label
    class_counts: dict[str, int] = {}
    if label in raw.frame.columns:
        _, ids, names = encode_labels(raw.frame[label])
        tally = Counter(ids)
        class_counts = {name: tally[index] for index, name in enumerate(names)}
    stats = []
    for name in raw.columns:
        if name == label:
            continue
        values, failures, _ = parse_numeric_column(raw.frame[name])
        stats.append(_stats(name, values, failures))
    return DatasetSummary(rows=raw.n_rows, columns=len(raw.columns), class_counts=class_counts, column_stats=stats)


def describe_dataset(dataset: Dataset) -> DatasetSummary:
    """Summarise a prepared dataset."""
    stats = [_stats(name, dataset.features[:, index]) for index, name in enumerate(dataset.feature_names)]
    return DatasetSummary(
        rows=dataset.n_rows,
        columns=dataset.n_features,
        class_counts=dataset.class_counts(),
        column_stats=stats,
    )
