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

"""Cleaning of raw flow tables into numeric datasets.

`preprocess` applies, in order: drop identifier columns, parse numerics
(``Infinity``/``NaN``/empty cells become missing), impute missing values,
drop exact duplicate rows, encode labels by first appearance, and optionally
min-max scale. Every step is recorded in the dataset provenance.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import TYPE_CHECKING, Final

import numpy as np
import pandas as pd

from evoids.core.model_types import ImputationStrategy, LogComponent
from evoids.logging import structured_extra

from .models import Dataset, EmptyDatasetError, Provenance, SchemaError
from .scaling import MinMaxScaler
from .schema import schema_for

if TYPE_CHECKING:
    from evoids.core.type_aliases import BoolArray, FloatArray

    from .models import RawTable

logger: logging.Logger = logging.getLogger("evoids.data")

__all__ = [
    "DEFAULT_KNN_IMPUTE_K",
    "MISSING_TOKENS",
    "PreprocessOptions",
    "encode_labels",
    "impute_knn",
    "impute_median",
    "parse_numeric_column",
    "preprocess",
]

DEFAULT_KNN_IMPUTE_K: Final[int] = 5
MISSING_TOKENS: Final[frozenset[str]] = frozenset(
    {"", "nan", "na", "n/a", "null", "infinity", "+infinity", "-infinity", "inf", "+inf", "-inf"},
)


@dataclass(frozen=True, slots=True)
class PreprocessOptions:
    """Preprocessing switches.

    Attributes:
        imputation: Missing-value strategy.
        knn_k: Donor rows consulted by the k-nearest-row imputer.
        scale: Whether to min-max scale the cleaned features.
        encode_nominal: Label-encode all-text columns instead of rejecting them.
        extra_drop: Additional columns to drop besides the kind's drop-list.
    """

    imputation: ImputationStrategy = ImputationStrategy.MEDIAN
    knn_k: int = DEFAULT_KNN_IMPUTE_K
    scale: bool = True
    encode_nominal: bool = False
    extra_drop: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.knn_k < 1:
            msg = f"knn_k must be >= 1 (got {self.knn_k})"
            raise SchemaError(msg)


def parse_numeric_column(cells: pd.Series) -> tuple[FloatArray, int, bool]:
    """Parse text cells into floats.

    Args:
        cells: Text cells of one column.

    Returns:
        ``(values, failures, all_text)``: values with NaN for missing cells,
        the number of non-empty cells that were not numbers, and whether every
        non-missing cell failed to parse.
    """
    stripped = cells.astype(str).str.strip()
    missing = stripped.str.lower().isin(MISSING_TOKENS).to_numpy()
    parsed = pd.to_numeric(stripped.where(~missing), errors="coerce").to_numpy(dtype=np.float64, na_value=np.nan)
    failed = np.isnan(parsed) & ~missing
    parsed[~np.isfinite(parsed)] = np.nan
    failures = int(failed.sum())
    observed = int((~missing).sum())
    return parsed, failures, observed > 0 and failures == observed


def _encode_nominal(cells: pd.Series) -> tuple[FloatArray, list[str]]:
    stripped = cells.astype(str).str.strip()
    codes, uniques = pd.factorize(stripped, sort=False)
    return codes.astype(np.float64), [str(value) for value in uniques]


def impute_median(matrix: FloatArray) -> tuple[FloatArray, dict[int, int]]:
    """Fill NaNs with the column median of observed values (0 for all-missing columns).

    Returns:
        The filled matrix and ``{column index: cells imputed}`` for columns with gaps.
    """
    filled = matrix.copy()
    counts: dict[int, int] = {}
    for column in range(filled.shape[1]):
        gaps = np.isnan(filled[:, column])
        if not gaps.any():
            continue
        observed = filled[~gaps, column]
        filled[gaps, column] = float(np.median(observed)) if observed.size else 0.0
        counts[column] = int(gaps.sum())
    return filled, counts


def _nan_euclidean(row: FloatArray, row_mask: BoolArray, others: FloatArray, others_mask: BoolArray) -> FloatArray:
    common = others_mask & row_mask
    diff = np.where(common, others - np.where(row_mask, row, 0.0), 0.0)
    sums = np.einsum("ij,ij->i", diff, diff)
    shared = common.sum(axis=1)
    distances = np.full(others.shape[0], np.inf)
    usable = shared > 0
    distances[usable] = np.sqrt(sums[usable] * (row.size / shared[usable]))
    return distances


def impute_knn(matrix: FloatArray, k: int = DEFAULT_KNN_IMPUTE_K) -> tuple[FloatArray, dict[int, int]]:
    """Fill NaNs with the mean of the `k` nearest donor rows.

    Distances are NaN-aware Euclidean over columns observed in both rows,
    computed on range-normalised values and rescaled by the share of usable
    columns. Donors must observe the missing column; distance ties go to the
    lower row index. Cells with no usable donor fall back to the column median.

    Returns:
        The filled matrix and ``{column index: cells imputed}`` for columns with gaps.
    """
    observed_mask = ~np.isnan(matrix)
    if observed_mask.all():
        return matrix.copy(), {}
    lows = np.array(
        [matrix[observed_mask[:, c], c].min() if observed_mask[:, c].any() else 0.0 for c in range(matrix.shape[1])],
    )
    highs = np.array(
        [matrix[observed_mask[:, c], c].max() if observed_mask[:, c].any() else 0.0 for c in range(matrix.shape[1])],
    )
    spans = np.where(highs > lows, highs - lows, 1.0)
    normalised = np.where(observed_mask, (np.where(observed_mask, matrix, 0.0) - lows) / spans, 0.0)
    fallback, _ = impute_median(matrix)

    filled = matrix.copy()
    counts: dict[int, int] = {}
    for row in np.flatnonzero(~observed_mask.all(axis=1)):
        distances = _nan_euclidean(normalised[row], observed_mask[row], normalised, observed_mask)
        distances[row] = np.inf
        order = np.argsort(distances, kind="stable")
        for column in np.flatnonzero(~observed_mask[row]):
            donors = [i for i in order if observed_mask[i, column] and np.isfinite(distances[i])][:k]
            filled[row, column] = float(np.mean(matrix[donors, column])) if donors else fallback[row, column]
            counts[int(column)] = counts.get(int(column), 0) + 1
    return filled, counts


def encode_labels(cells: pd.Series) -> tuple[list[str], list[int], list[str]]:
    """Normalise label cells and assign dense ids by first appearance.

    Labels are matched case-insensitively after trimming whitespace; the
    display name of a class is its first-seen trimmed spelling.

    Returns:
        ``(keys, ids, class_names)`` where `keys` are the normalised labels.
    """
    stripped = [str(value).strip() for value in cells]
    keys = [value.upper() for value in stripped]
    index: dict[str, int] = {}
    names: list[str] = []
    ids: list[int] = []
    for key, display in zip(keys, stripped, strict=True):
        if key not in index:
            index[key] = len(names)
            names.append(display)
        ids.append(index[key])
    return keys, ids, names


def preprocess(raw: RawTable, options: PreprocessOptions | None = None) -> Dataset:  # noqa: C901, PLR0914
    """Turn a raw table into a clean numeric dataset.

    Args:
        raw: Ingested table.
        options: Preprocessing switches; defaults when None.

    Returns:
        The cleaned (and, unless disabled, scaled) dataset.

    Raises:
        SchemaError: If the label column is missing or empty, a kept column is
            entirely non-numeric (and nominal encoding is off), or no feature
            columns remain.
        EmptyDatasetError: If no rows remain.
    """
    opts = options or PreprocessOptions()
    schema = schema_for(raw.kind)
    frame = raw.frame
    if schema.label not in frame.columns:
        raise SchemaError("label column not found", missing=[schema.label])
    if raw.n_rows == 0:
        stage = "ingest"
        raise EmptyDatasetError(stage)

    drop_names = set(schema.drop) | set(opts.extra_drop)
    dropped = [name for name in raw.columns if name in drop_names]
    feature_names = [name for name in raw.columns if name not in drop_names and name != schema.label]
    if not feature_names:
        msg = "no feature columns remain after dropping identifiers"
        raise SchemaError(msg)

    label_cells = frame[schema.label]
    if bool((label_cells.astype(str).str.strip() == "").any()):
        msg = "label column contains empty cells"
        raise SchemaError(msg)

    columns: list[FloatArray] = []
    parse_failures: dict[str, int] = {}
    encoded: dict[str, list[str]] = {}
    for name in feature_names:
        values, failures, all_text = parse_numeric_column(frame[name])
        if all_text:
            if not opts.encode_nominal:
                raise SchemaError(f"column '{name}' is entirely non-numeric")
            values, encoded[name] = _encode_nominal(frame[name])
        elif failures:
            parse_failures[name] = failures
        columns.append(values)
    matrix = np.column_stack(columns)

    if opts.imputation is ImputationStrategy.KNN:
        matrix, imputed = impute_knn(matrix, opts.knn_k)
    else:
        matrix, imputed = impute_median(matrix)

    keys, _, _ = encode_labels(label_cells)
    keyed = pd.DataFrame(matrix)
    keyed["__label__"] = keys
    keep = ~keyed.duplicated(keep="first").to_numpy()
    matrix = matrix[keep]
    duplicates = int((~keep).sum())
    if matrix.shape[0] == 0:
        stage = "preprocess"
        raise EmptyDatasetError(stage)
    _, label_ids, class_names = encode_labels(label_cells[keep])

    provenance = Provenance(
        sources=[path.as_posix() for path in raw.sources],
        kind=raw.kind,
        dropped_columns=dropped,
        encoded_columns=encoded,
        parse_failures=parse_failures,
        imputation=opts.imputation.value,
        imputed_counts={feature_names[column]: count for column, count in sorted(imputed.items())},
        duplicates_removed=duplicates,
        label_map={name: index for index, name in enumerate(class_names)},
        row_counts={"ingested": raw.n_rows, "deduplicated": int(matrix.shape[0])},
        header_deviations=list(raw.deviations),
        actions=[
            f"dropped {len(dropped)} identifier column(s)",
            f"parsed {len(feature_names)} feature column(s)",
            f"imputed {sum(imputed.values())} cell(s) with {opts.imputation.value}",
            f"removed {duplicates} duplicate row(s)",
            f"encoded {len(class_names)} label(s)",
        ],
    )
    if opts.scale:
        scaler = MinMaxScaler.fit(matrix)
        matrix = scaler.transform(matrix)
        provenance.scaler_params = scaler.params(tuple(feature_names))
        provenance.actions.append("min-max scaled")

    dataset = Dataset(
        matrix, np.asarray(label_ids, dtype=np.int64), tuple(feature_names), tuple(class_names), provenance
    )
    logger.info(
        "Preprocessed %d rows into %d features and %d classes",
        dataset.n_rows,
        dataset.n_features,
        dataset.n_classes,
        extra=structured_extra(
            component=LogComponent.DATA,
            dataset=raw.kind.value,
            counts={
                "rows": dataset.n_rows,
                "duplicates": duplicates,
                "imputed": sum(imputed.values()),
                "dropped_columns": len(dropped),
            },
        ),
    )
    return dataset
