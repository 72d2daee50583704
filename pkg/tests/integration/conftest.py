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

"""Fixtures for multi-component integration tests."""

from __future__ import annotations

import json
from typing import TYPE_CHECKING

import pytest

from evoids.core.model_types import DatasetKind
from tests.fixtures.builders import build_experiment_payload, write_flow_csv

if TYPE_CHECKING:
    from pathlib import Path


@pytest.fixture
def ddos_csvs(tmp_path: Path) -> list[Path]:
    """Two CIC-DDoS2019 day files with uneven class counts.

    Returns:
        Paths of the written CSV files.
    """
    return [
        write_flow_csv(tmp_path / "raw" / "ddos_a.csv", DatasetKind.CIC_DDOS2019, rows_per_label=[14, 9, 11]),
        write_flow_csv(tmp_path / "raw" / "ddos_b.csv", DatasetKind.CIC_DDOS2019, rows_per_label=[6, 8, 4], seed=12),
    ]


@pytest.fixture
def experiment_config(tmp_path: Path, ddos_csvs: list[Path]) -> Path:
    """Experiment configuration over both published layouts.

    Returns:
        Path of the JSON configuration file.
    """
    ids = write_flow_csv(tmp_path / "raw" / "ids.csv", DatasetKind.CSE_CIC_IDS2018, rows_per_label=[12, 10, 9])
    payload = build_experiment_payload(
        [
            ("CIC-DDoS2019", "cic-ddos2019", ddos_csvs),
            ("CSE-CIC-IDS2018", "cse-cic-ids2018", [ids]),
        ],
        output_dir=tmp_path / "report",
    )
    path = tmp_path / "experiment.json"
    _ = path.write_text(json.dumps(payload), encoding="utf-8")
    return path
