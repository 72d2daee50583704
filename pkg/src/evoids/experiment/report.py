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

"""Experiment report models and writers.

``report.json`` is authoritative. ``report.csv`` mirrors the classification
tables (one row per grid cell) and ``confusion/`` holds one CSV grid per
successful cell. Wall-clock fields vary between runs, so `ExperimentReport.body`
drops them to give a reproducible view.
"""

from __future__ import annotations

import re
from typing import TYPE_CHECKING, Any, ClassVar, Final

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, model_validator

from evoids.core.model_types import RecordStatus
from evoids.json import canonical_dumps, dumps_pretty
from evoids.metrics import ConfusionMatrix, Metrics, scores, write_confusion_csv
from evoids.runtime import write_text_atomic

if TYPE_CHECKING:
    from pathlib import Path

__all__ = [
    "CSV_COLUMNS",
    "REPORT_CSV",
    "REPORT_JSON",
    "ErrorEntry",
    "ExperimentRecord",
    "ExperimentReport",
    "confusion_filename",
    "report_frame",
    "write_report",
]

REPORT_JSON: Final[str] = "report.json"
REPORT_CSV: Final[str] = "report.csv"
CONFUSION_DIR: Final[str] = "confusion"
CSV_COLUMNS: Final[tuple[str, ...]] = (
    "Dataset",
    "Model",
    "FS",
    "Accuracy",
    "Precision",
    "Recall",
    "F1-score",
    "FPR",
    "FNR",
    "Training Time",
    "Testing Time",
)
_VOLATILE_RECORD_FIELDS: Final[frozenset[str]] = frozenset({"train_time", "test_time"})
_UNSAFE_NAME = re.compile(r"[^A-Za-z0-9._-]+")


class ErrorEntry(BaseModel):
    """Structured failure of one grid cell."""

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True, extra="forbid")

    type: str
    code: str
    message: str


class ExperimentRecord(BaseModel):
    """Outcome of one (dataset, model, feature-selection flag) cell."""

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True, extra="forbid")

    dataset: str
    model: str
    fs_applied: bool
    status: RecordStatus = RecordStatus.OK
    selected_feature_count: int | None = Field(default=None, ge=1)
    selected_features: list[str] = Field(default_factory=list)
    confusion_matrix: list[list[int]] | None = None
    class_names: list[str] = Field(default_factory=list)
    metrics: Metrics | None = None
    train_time: float = Field(default=0.0, ge=0.0)
    test_time: float = Field(default=0.0, ge=0.0)
    seed: int
    config_digest: str
    fs_cost: float | None = None
    error: ErrorEntry | None = None

    @model_validator(mode="after")
    def _status_matches_payload(self) -> ExperimentRecord:
        if self.status is RecordStatus.OK and (self.metrics is None or self.confusion_matrix is None):
            msg = "successful records need metrics and a confusion matrix"
            raise ValueError(msg)
        if self.status is RecordStatus.ERROR and self.error is None:
            msg = "failed records need an error entry"
            raise ValueError(msg)
        return self

    @property
    def label(self) -> str:
        return f"{self.dataset}/{self.model}/{'fs' if self.fs_applied else 'base'}"

    def recomputed(self) -> Metrics | None:
        """Scores recomputed from the stored confusion matrix (timings left at zero)."""
        if self.confusion_matrix is None or self.metrics is None:
            return None
        return scores(ConfusionMatrix.from_lists(self.confusion_matrix), self.metrics.averaging)

    def body(self) -> dict[str, Any]:
        payload = self.model_dump(mode="json", exclude=set(_VOLATILE_RECORD_FIELDS))
        if payload["metrics"] is not None:
            for key in _VOLATILE_RECORD_FIELDS:
                payload["metrics"].pop(key, None)
        return payload


class ExperimentReport(BaseModel):
    """All records of one experiment run."""

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True, extra="forbid")

    tool_version: str
    generated_at: str
    config_digest: str
    records: list[ExperimentRecord]

    @property
    def failures(self) -> list[ExperimentRecord]:
        return [record for record in self.records if record.status is RecordStatus.ERROR]

    def body(self) -> dict[str, Any]:
        """Report without the timestamp and wall-clock timings."""
        return {
            "tool_version": self.tool_version,
            "config_digest": self.config_digest,
            "records": [record.body() for record in self.records],
        }

    def body_json(self) -> str:
        return canonical_dumps(self.body())


def confusion_filename(record: ExperimentRecord) -> str:
    """``<dataset>__<model>__<fs|base>.csv`` with path-unsafe characters replaced."""
    parts = (record.dataset, record.model, "fs" if record.fs_applied else "base")
    return "__".join(_UNSAFE_NAME.sub("_", part) for part in parts) + ".csv"


def report_frame(report: ExperimentReport) -> pd.DataFrame:
    """Tabulate successful records using the classification-table columns."""
    rows = [
        (
            record.dataset,
            record.model,
            "yes" if record.fs_applied else "no",
            record.metrics.accuracy,
            record.metrics.precision_macro,
            record.metrics.recall_macro,
            record.metrics.f1_macro,
            record.metrics.fpr_macro,
            record.metrics.fnr_macro,
            record.train_time,
            record.test_time,
        )
        for record in report.records
        if record.metrics is not None
    ]
    return pd.DataFrame(rows, columns=list(CSV_COLUMNS))


def write_report(report: ExperimentReport, output_dir: Path) -> dict[str, Path]:
    """Write ``report.json``, ``report.csv`` and the confusion grids under `output_dir`.

    Every file is replaced atomically. Returns the written paths keyed by
    ``"json"``, ``"csv"`` and ``confusion:<filename>``.
    """
    output_dir.mkdir(parents=True, exist_ok=True)
    written: dict[str, Path] = {}
    for record in report.records:
        if record.confusion_matrix is None:
            continue
        filename = confusion_filename(record)
        target = output_dir / CONFUSION_DIR / filename
        target.parent.mkdir(parents=True, exist_ok=True)
        write_confusion_csv(ConfusionMatrix.from_lists(record.confusion_matrix), record.class_names, target)
        written[f"confusion:{filename}"] = target
    csv_path = output_dir / REPORT_CSV
    write_text_atomic(csv_path, report_frame(report).to_csv(index=False, lineterminator="\n"))
    written["csv"] = csv_path
    json_path = output_dir / REPORT_JSON
    write_text_atomic(json_path, dumps_pretty(report.model_dump(mode="json")))
    written["json"] = json_path
    return written
