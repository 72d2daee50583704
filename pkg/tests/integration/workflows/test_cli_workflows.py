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

"""Integration tests for the command-line workflows."""

from __future__ import annotations

import json
from typing import TYPE_CHECKING

import pandas as pd
import pytest

from evoids.cli.app import main
from evoids.data import load_dataset
from evoids.experiment import ExperimentReport
from evoids.experiment.report import CSV_COLUMNS
from evoids.selection import load_fs_result

if TYPE_CHECKING:
    from collections.abc import Sequence
    from pathlib import Path

pytestmark = [pytest.mark.integration, pytest.mark.cli]

_SEARCH = ("--n-particles", "6", "--max-fes", "30", "--k-neighbors", "2")


def _run_cli_command(args: Sequence[str]) -> int:
    """Invoke the CLI entrypoint with the provided arguments.

    Returns:
        Integer exit code returned by the CLI.
    """
    return main(list(args))


def _load_report(path: Path) -> ExperimentReport:
    return ExperimentReport.model_validate(json.loads(path.read_text(encoding="utf-8")))


def test_prep_select_eval_on_multi_file_input(tmp_path: Path, ddos_csvs: list[Path]) -> None:
    out = tmp_path / "out"
    base = ["--out", str(out), "--seed", "8"]
    prep = [*base, "prep", "--input", *map(str, ddos_csvs), "--kind", "cic-ddos2019", "--name", "ddos"]
    assert _run_cli_command(prep) == 0
    cache = out / "ddos.npz"
    dataset = load_dataset(cache)
    assert sorted(dataset.class_counts().values()) == [15, 15, 15]

    select = [*base, "select", "--dataset", str(cache), "--model", "knn", "--param", "k=3", *_SEARCH]
    assert _run_cli_command(select) == 0
    document = load_fs_result(out / "ddos__KNN__fs.json")
    assert document.evaluations_used <= 30  # noqa: PLR2004
    assert set(document.selected_names) <= set(dataset.feature_names)

    evaluate = [*base, "eval", "--dataset", str(cache), "--model", "knn", "--param", "k=3"]
    assert _run_cli_command([*evaluate, "--mask", str(out / "ddos__KNN__fs.json")]) == 0
    assert _run_cli_command(evaluate) == 0
    fs_metrics = json.loads((out / "ddos__KNN__fs_metrics.json").read_text(encoding="utf-8"))
    base_metrics = json.loads((out / "ddos__KNN__base_metrics.json").read_text(encoding="utf-8"))
    assert fs_metrics["features"] == document.selected_names
    assert len(base_metrics["features"]) == dataset.n_features
    assert base_metrics["metrics"]["accuracy"] >= 0.9  # noqa: PLR2004


def test_strict_scaling_workflow(tmp_path: Path, ddos_csvs: list[Path]) -> None:
    out = tmp_path / "strict"
    base = ["--out", str(out), "--strict-scaling"]
    prep = [*base, "prep", "--input", *map(str, ddos_csvs), "--kind", "cic-ddos2019", "--name", "ddos"]
    assert _run_cli_command(prep) == 0
    assert _run_cli_command([*base, "eval", "--dataset", str(out / "ddos.npz"), "--model", "D_Tree"]) == 0
    payload = json.loads((out / "ddos__D_Tree__base_metrics.json").read_text(encoding="utf-8"))
    assert payload["metrics"]["accuracy"] >= 0.9  # noqa: PLR2004


def test_experiment_is_reproducible_across_thread_counts(tmp_path: Path, experiment_config: Path) -> None:
    first, second = tmp_path / "first", tmp_path / "second"
    assert _run_cli_command(["--config", str(experiment_config), "--out", str(first), "experiment"]) == 0
    argv = ["--config", str(experiment_config), "--out", str(second), "--threads", "3", "experiment"]
    assert _run_cli_command(argv) == 0

    report = _load_report(first / "report.json")
    assert report.body_json() == _load_report(second / "report.json").body_json()
    assert not report.failures
    assert len(report.records) == 8  # noqa: PLR2004

    frame = pd.read_csv(first / "report.csv")
    assert list(frame.columns) == list(CSV_COLUMNS)
    assert len(frame) == 8  # noqa: PLR2004
    assert len(list((first / "confusion").glob("*.csv"))) == 8  # noqa: PLR2004


def test_experiment_seed_flag_changes_the_digest(tmp_path: Path, experiment_config: Path) -> None:
    default_out, seeded_out = tmp_path / "default", tmp_path / "seeded"
    assert _run_cli_command(["--config", str(experiment_config), "--out", str(default_out), "experiment"]) == 0
    argv = ["--config", str(experiment_config), "--out", str(seeded_out), "--seed", "99", "experiment"]
    assert _run_cli_command(argv) == 0
    assert _load_report(default_out / "report.json").config_digest != _load_report(
        seeded_out / "report.json",
    ).config_digest
