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

"""Unit tests for the cleaning pipeline that turns raw tables into datasets."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
import pandas as pd
import pytest

from evoids.core.model_types import DatasetKind, ImputationStrategy
from evoids.data import (
    EmptyDatasetError,
    PreprocessOptions,
    RawTable,
    SchemaError,
    ingest,
    preprocess,
)
from evoids.data.preprocess import impute_knn, impute_median, parse_numeric_column
from evoids.data.schema import schema_for
from tests.fixtures.builders import write_flow_csv

if TYPE_CHECKING:
    from pathlib import Path

pytestmark = pytest.mark.unit


def _raw(columns: dict[str, list[str]], kind: DatasetKind = DatasetKind.GENERIC) -> RawTable:
    return RawTable(frame=pd.DataFrame(columns, dtype=str), kind=kind)


def test_min_max_scaling_constant_columns_and_median_imputation() -> None:
    raw = _raw(
        {
            "span": ["0", "5", "10"],
            "flat": ["7", "7", "7"],
            "gappy": ["1", "Infinity", "3"],
            "Label": ["a", "b", "a"],
        },
    )
    dataset = preprocess(raw)

    np.testing.assert_allclose(dataset.features[:, 0], [0.0, 0.5, 1.0])
    np.testing.assert_allclose(dataset.features[:, 1], [0.0, 0.0, 0.0])
    np.testing.assert_allclose(dataset.features[:, 2], [0.0, 0.5, 1.0])
    assert dataset.provenance.imputed_counts == {"gappy": 1}
    assert dataset.provenance.imputation == "median"
    assert dataset.provenance.scaler_params["span"] == (0.0, 10.0)
    assert dataset.provenance.scaler_params["gappy"] == (1.0, 3.0)


def test_scaling_can_be_disabled() -> None:
    raw = _raw({"x": ["2", "4"], "Label": ["a", "b"]})
    dataset = preprocess(raw, PreprocessOptions(scale=False))
    np.testing.assert_allclose(dataset.features[:, 0], [2.0, 4.0])
    assert dataset.provenance.scaler_params == {}


@pytest.mark.parametrize("token", ["Infinity", "-Infinity", "NaN", "", " inf ", "null"])
def test_missing_tokens_parse_as_nan(token: str) -> None:
    values, failures, all_text = parse_numeric_column(pd.Series(["1", token, "3"]))
    assert np.isnan(values[1])
    assert failures == 0
    assert all_text is False


def test_unparseable_cells_are_counted() -> None:
    values, failures, all_text = parse_numeric_column(pd.Series(["1", "abc", "3"]))
    assert np.isnan(values[1])
    assert failures == 1
    assert all_text is False


def test_labels_are_normalised_and_ordered_by_first_appearance() -> None:
    raw = _raw({"x": ["1", "2", "3", "4"], "Label": ["Syn", " BENIGN", "benign ", "SYN"]})
    dataset = preprocess(raw)
    assert dataset.class_names == ("Syn", "BENIGN")
    assert dataset.labels.tolist() == [0, 1, 1, 0]
    assert dataset.provenance.label_map == {"Syn": 0, "BENIGN": 1}


def test_exact_duplicates_are_removed_including_label() -> None:
    raw = _raw({"x": ["1", "1", "1", "2"], "Label": ["a", "a", "b", "a"]})
    dataset = preprocess(raw, PreprocessOptions(scale=False))
    assert dataset.n_rows == 3
    assert dataset.provenance.duplicates_removed == 1
    assert dataset.provenance.row_counts == {"ingested": 4, "deduplicated": 3}


def test_all_text_column_is_rejected_unless_encoded() -> None:
    columns = {"proto": ["tcp", "udp", "tcp"], "x": ["1", "2", "3"], "Label": ["a", "b", "a"]}
    with pytest.raises(SchemaError, match="column 'proto' is entirely non-numeric"):
        _ = preprocess(_raw(columns))

    dataset = preprocess(_raw(columns), PreprocessOptions(encode_nominal=True, scale=False))
    np.testing.assert_allclose(dataset.features[:, 0], [0.0, 1.0, 0.0])
    assert dataset.provenance.encoded_columns == {"proto": ["tcp", "udp"]}


def test_empty_label_cell_is_a_schema_error() -> None:
    with pytest.raises(SchemaError, match="label column contains empty cells"):
        _ = preprocess(_raw({"x": ["1", "2"], "Label": ["a", " "]}))


def test_zero_rows_is_an_empty_dataset() -> None:
    with pytest.raises(EmptyDatasetError, match="ingest"):
        _ = preprocess(_raw({"x": [], "Label": []}))


def test_extra_drop_removes_named_columns() -> None:
    raw = _raw({"id": ["r1", "r2"], "x": ["1", "2"], "Label": ["a", "b"]})
    dataset = preprocess(raw, PreprocessOptions(extra_drop=("id",)))
    assert dataset.feature_names == ("x",)
    assert dataset.provenance.dropped_columns == ["id"]


def test_ddos_identifier_columns_are_dropped(tmp_path: Path) -> None:
    path = write_flow_csv(tmp_path / "ddos.csv", DatasetKind.CIC_DDOS2019, rows_per_label=4)
    dataset = preprocess(ingest([path], DatasetKind.CIC_DDOS2019))

    schema = schema_for(DatasetKind.CIC_DDOS2019)
    assert set(dataset.provenance.dropped_columns) == set(schema.drop)
    assert dataset.n_features == 88 - len(schema.drop) - 1
    assert not set(schema.drop) & set(dataset.feature_names)
    assert dataset.provenance.imputed_counts == {"Flow Bytes/s": 1}
    assert float(dataset.features.min()) >= 0.0
    assert float(dataset.features.max()) <= 1.0


def test_preprocess_is_idempotent_on_its_output() -> None:
    raw = _raw(
        {
            "a": ["3", "1", "Infinity", "8"],
            "b": ["0.5", "0.25", "0.75", "1.5"],
            "Label": ["x", "y", "x", "y"],
        },
    )
    first = preprocess(raw)
    second = preprocess(first.to_raw_table())
    np.testing.assert_array_equal(first.features, second.features)
    np.testing.assert_array_equal(first.labels, second.labels)
    assert first.class_names == second.class_names


def test_median_imputation_handles_all_missing_columns() -> None:
    matrix = np.array([[1.0, np.nan], [np.nan, np.nan], [3.0, np.nan]])
    filled, counts = impute_median(matrix)
    np.testing.assert_allclose(filled, [[1.0, 0.0], [2.0, 0.0], [3.0, 0.0]])
    assert counts == {0: 1, 1: 3}


def test_knn_imputation_uses_nearest_donors() -> None:
    matrix = np.array([[1.0, 1.0], [2.0, 2.0], [np.nan, 2.1], [10.0, 10.0]])
    nearest, counts = impute_knn(matrix, k=1)
    assert nearest[2, 0] == pytest.approx(2.0)
    assert counts == {0: 1}
    pair, _ = impute_knn(matrix, k=2)
    assert pair[2, 0] == pytest.approx(1.5)


def test_knn_mode_is_recorded_in_provenance() -> None:
    raw = _raw({"a": ["1", "2", "NaN", "10"], "b": ["1", "2", "2.1", "10"], "Label": ["p", "q", "p", "q"]})
    dataset = preprocess(raw, PreprocessOptions(imputation=ImputationStrategy.KNN, knn_k=1, scale=False))
    assert dataset.features[2, 0] == pytest.approx(2.0)
    assert dataset.provenance.imputation == "knn"


def test_knn_k_must_be_positive() -> None:
    with pytest.raises(SchemaError, match="knn_k must be >= 1"):
        _ = PreprocessOptions(knn_k=0)
