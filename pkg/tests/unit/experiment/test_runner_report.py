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

"""Unit tests for the experiment runner and its reports."""

from __future__ import annotations

import json
from typing import TYPE_CHECKING

import pandas as pd
import pytest
from pydantic import ValidationError

from evoids.core.model_types import DatasetKind, RecordStatus
from evoids.experiment import (
    ExperimentConfig,
    ExperimentRecord,
    ExperimentReport,
    confusion_filename,
    report_frame,
    run_and_write,
    run_experiment,
    write_report,
)
from evoids.experiment.report import CSV_COLUMNS
from tests.fixtures.builders import build_experiment_payload, write_flow_csv

if TYPE_CHECKING:
    from pathlib import Path

pytestmark = pytest.mark.unit

STAMP = "2026-01-01T00:00:00+00:00"


@pytest.fixture
def two_dataset_config(tmp_path: Path) -> ExperimentConfig:
    ddos = write_flow_csv(tmp_path / "data" / "ddos.csv", DatasetKind.CIC_DDOS2019)
    ids = write_flow_csv(tmp_path / "data" / "ids.csv", DatasetKind.CSE_CIC_IDS2018, rows_per_label=10)
    payload = build_experiment_payload(
        [("CIC-DDoS2019", "cic-ddos2019", [ddos]), ("CSE-CIC-IDS2018", "cse-cic-ids2018", [ids])],
        output_dir=tmp_path / "out",
    )
    return ExperimentConfig.model_validate(payload)


def test_every_cell_produces_a_record_in_grid_order(two_dataset_config: ExperimentConfig) -> None:
    report = run_experiment(two_dataset_config, generated_at=STAMP)
    assert [record.label for record in report.records] == [
        "CIC-DDoS2019/KNN/base",
        "CIC-DDoS2019/KNN/fs",
        "CIC-DDoS2019/DT/base",
        "CIC-DDoS2019/DT/fs",
        "CSE-CIC-IDS2018/KNN/base",
        "CSE-CIC-IDS2018/KNN/fs",
        "CSE-CIC-IDS2018/DT/base",
        "CSE-CIC-IDS2018/DT/fs",
    ]
    assert not report.failures
    assert report.generated_at == STAMP


def test_feature_selection_shrinks_or_keeps_the_feature_set(two_dataset_config: ExperimentConfig) -> None:
    report = run_experiment(two_dataset_config)
    for base, selected in zip(report.records[::2], report.records[1::2], strict=True):
        assert base.selected_feature_count is not None
        assert selected.selected_feature_count is not None
        assert selected.selected_feature_count <= base.selected_feature_count
        assert len(selected.selected_features) == selected.selected_feature_count
        assert set(selected.selected_features) <= set(base.selected_features)
        assert selected.fs_cost is not None
        assert base.fs_cost is None


def test_stored_metrics_match_the_confusion_matrix(two_dataset_config: ExperimentConfig) -> None:
    report = run_experiment(two_dataset_config)
    for record in report.records:
        recomputed = record.recomputed()
        assert recomputed is not None
        assert record.metrics is not None
        assert recomputed.accuracy == record.metrics.accuracy
        assert recomputed.f1_macro == record.metrics.f1_macro
        assert recomputed.fpr_macro == record.metrics.fpr_macro
        assert recomputed.fnr_macro == record.metrics.fnr_macro
        assert sum(map(sum, record.confusion_matrix or [])) > 0
        assert record.class_names


def test_report_body_is_reproducible_across_thread_counts(two_dataset_config: ExperimentConfig) -> None:
    serial = run_experiment(two_dataset_config, threads=1, generated_at="first")
    again = run_experiment(two_dataset_config, threads=1, generated_at="second")
    threaded = run_experiment(two_dataset_config, threads=3, generated_at="third")
    assert serial.body_json() == again.body_json()
    assert serial.body_json() == threaded.body_json()
    assert "train_time" not in serial.body_json()


def test_failed_dataset_only_fails_its_own_cells(two_dataset_config: ExperimentConfig, tmp_path: Path) -> None:
    broken = two_dataset_config.datasets[0].model_copy(update={"paths": [tmp_path / "missing.csv"]})
    config = two_dataset_config.model_copy(update={"datasets": [broken, two_dataset_config.datasets[1]]})
    report = run_experiment(config)
    failed = report.failures
    assert [record.dataset for record in failed] == ["CIC-DDoS2019"] * 4
    for record in failed:
        assert record.status is RecordStatus.ERROR
        assert record.error is not None
        assert record.error.code == "EV500"
        assert record.error.type == "CsvParseError"
        assert record.metrics is None
    assert all(record.status is RecordStatus.OK for record in report.records[4:])


def test_written_outputs(two_dataset_config: ExperimentConfig, tmp_path: Path) -> None:
    report, written = run_and_write(two_dataset_config, output_dir=tmp_path / "report")
    assert written["json"].name == "report.json"
    reloaded = ExperimentReport.model_validate(json.loads(written["json"].read_text(encoding="utf-8")))
    assert reloaded.body_json() == report.body_json()
    frame = pd.read_csv(written["csv"])
    assert tuple(frame.columns) == CSV_COLUMNS
    assert len(frame) == 8  # noqa: PLR2004
    assert set(frame["FS"]) == {"yes", "no"}
    confusion = sorted(key for key in written if key.startswith("confusion:"))
    assert len(confusion) == 8  # noqa: PLR2004
    grid = pd.read_csv(written["confusion:CIC-DDoS2019__KNN__fs.csv"], index_col=0)
    assert list(grid.columns) == list(report.records[1].class_names)


def test_report_csv_skips_failed_records() -> None:
    failed = ExperimentRecord.model_validate(
        {
            "dataset": "d",
            "model": "m",
            "fs_applied": False,
            "status": "error",
            "seed": 0,
            "config_digest": "x",
            "error": {"type": "CsvParseError", "code": "EV500", "message": "gone"},
        },
    )
    report = ExperimentReport(tool_version="0", generated_at=STAMP, config_digest="x", records=[failed])
    assert report_frame(report).empty
    assert report.failures == [failed]


def test_records_must_carry_their_payload() -> None:
    with pytest.raises(ValidationError, match="need metrics"):
        _ = ExperimentRecord(dataset="d", model="m", fs_applied=False, seed=0, config_digest="x")
    with pytest.raises(ValidationError, match="need an error entry"):
        _ = ExperimentRecord(
            dataset="d",
            model="m",
            fs_applied=False,
            status=RecordStatus.ERROR,
            seed=0,
            config_digest="x",
        )


def test_confusion_filenames_are_path_safe() -> None:
    record = ExperimentRecord.model_validate(
        {
            "dataset": "CIC DDoS/2019",
            "model": "D_Tree",
            "fs_applied": True,
            "status": "error",
            "seed": 0,
            "config_digest": "x",
            "error": {"type": "E", "code": "EV000", "message": "m"},
        },
    )
    assert confusion_filename(record) == "CIC_DDoS_2019__D_Tree__fs.csv"


def test_write_report_with_only_failures(tmp_path: Path) -> None:
    record = ExperimentRecord.model_validate(
        {
            "dataset": "d",
            "model": "m",
            "fs_applied": True,
            "status": "error",
            "seed": 0,
            "config_digest": "x",
            "error": {"type": "E", "code": "EV000", "message": "m"},
        },
    )
    report = ExperimentReport(tool_version="0", generated_at=STAMP, config_digest="x", records=[record])
    written = write_report(report, tmp_path / "empty")
    assert set(written) == {"csv", "json"}
    assert written["csv"].read_text(encoding="utf-8").strip() == ",".join(CSV_COLUMNS)
