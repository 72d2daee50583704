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

"""Flow-record ingestion, cleaning, balancing and splitting."""

from __future__ import annotations

from .balance import AUTO_CAP, SamplingConfigError, downsample, resolve_cap
from .cache import load_dataset, save_dataset
from .describe import DatasetSummary, describe_dataset, describe_table
from .ingest import ingest, read_csv_table
from .models import (
    CacheFormatError,
    CsvParseError,
    Dataset,
    DatasetValueError,
    EmptyDatasetError,
    Provenance,
    RawTable,
    SchemaError,
    SplitPair,
    StratificationError,
)
from .preprocess import PreprocessOptions, preprocess
from .scaling import MinMaxScaler, scale_dataset
from .schema import SCHEMAS, DatasetSchema, schema_for
from .split import split, stratified_folds, stratified_indices

__all__ = [
    "AUTO_CAP",
    "SCHEMAS",
    "CacheFormatError",
    "CsvParseError",
    "Dataset",
    "DatasetSchema",
    "DatasetSummary",
    "DatasetValueError",
    "EmptyDatasetError",
    "MinMaxScaler",
    "PreprocessOptions",
    "Provenance",
    "RawTable",
    "SamplingConfigError",
    "SchemaError",
    "SplitPair",
    "StratificationError",
    "describe_dataset",
    "describe_table",
    "downsample",
    "ingest",
    "load_dataset",
    "preprocess",
    "read_csv_table",
    "resolve_cap",
    "save_dataset",
    "scale_dataset",
    "schema_for",
    "split",
    "stratified_folds",
    "stratified_indices",
]
