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

"""Experiment grid: configuration, execution and reports."""

from __future__ import annotations

from .config import (
    CONFIG_SCHEMA_VERSION,
    ConfigReadError,
    ConfigValidationError,
    ExperimentConfig,
    InvalidConfigFileError,
    UnsupportedConfigVersionError,
    config_digest,
    load_experiment_config,
)
from .report import (
    ErrorEntry,
    ExperimentRecord,
    ExperimentReport,
    confusion_filename,
    report_frame,
    write_report,
)
from .runner import GridCell, grid_cells, run_and_write, run_cell, run_experiment

__all__ = [
    "CONFIG_SCHEMA_VERSION",
    "ConfigReadError",
    "ConfigValidationError",
    "ErrorEntry",
    "ExperimentConfig",
    "ExperimentRecord",
    "ExperimentReport",
    "GridCell",
    "InvalidConfigFileError",
    "UnsupportedConfigVersionError",
    "config_digest",
    "confusion_filename",
    "grid_cells",
    "load_experiment_config",
    "report_frame",
    "run_and_write",
    "run_cell",
    "run_experiment",
    "write_report",
]
