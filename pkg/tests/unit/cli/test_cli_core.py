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

"""Unit tests for the CLI entry point, the init command and exit-code mapping."""

from __future__ import annotations

import argparse
import json
from typing import TYPE_CHECKING

import pytest

from evoids.cli import app
from evoids.cli.app import config_template, main, write_config_template
from evoids.error_codes import EXIT_DATA, EXIT_INTERNAL, EXIT_USAGE
from evoids.exceptions import EvoidsUsageError
from evoids.experiment import ExperimentConfig, grid_cells, load_experiment_config

if TYPE_CHECKING:
    from pathlib import Path

pytestmark = [pytest.mark.unit, pytest.mark.cli]


def test_version_flag_prints_version(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["--version"]) == 0
    assert capsys.readouterr().out.startswith("evoids ")


def test_missing_command_is_a_usage_error(capsys: pytest.CaptureFixture[str]) -> None:
    with pytest.raises(SystemExit) as excinfo:
        _ = main([])
    assert excinfo.value.code == EXIT_USAGE
    assert "No command provided." in capsys.readouterr().err


def test_unknown_flags_exit_with_usage_status() -> None:
    with pytest.raises(SystemExit) as excinfo:
        _ = main(["bench", "--no-such-flag"])
    assert excinfo.value.code == EXIT_USAGE


def test_invalid_n_per_label_is_rejected_by_the_parser(tmp_path: Path) -> None:
    with pytest.raises(SystemExit) as excinfo:
        _ = main(["prep", "--input", str(tmp_path / "a.csv"), "--n-per-label", "0"])
    assert excinfo.value.code == EXIT_USAGE


def test_config_template_is_a_valid_sixteen_cell_experiment() -> None:
    config = ExperimentConfig.model_validate(config_template())
    assert [entry.name for entry in config.datasets] == ["CIC-DDoS2019", "CSE-CIC-IDS2018"]
    assert config.n_per_label == 1000  # noqa: PLR2004
    assert len(grid_cells(config)) == 16  # noqa: PLR2004


def test_init_writes_a_loadable_config(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    target = tmp_path / "evoids.json"
    assert main(["init", "--output", str(target)]) == 0
    assert "[evoids] Wrote starter config to" in capsys.readouterr().out
    config = load_experiment_config(target)
    assert config.datasets[0].paths[0] == (tmp_path / "data/cic-ddos2019/DrDoS_DNS.csv").resolve()


def test_init_refuses_to_overwrite_without_force(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    target = tmp_path / "evoids.json"
    _ = target.write_text("{}", encoding="utf-8")
    assert write_config_template(target, force=False) == EXIT_USAGE
    assert "[evoids] Refusing to overwrite existing file" in capsys.readouterr().out
    assert target.read_text(encoding="utf-8") == "{}"

    assert main(["init", "--output", str(target), "--force"]) == 0
    assert json.loads(target.read_text(encoding="utf-8"))["schema_version"] == 1


def test_usage_errors_exit_with_status_one(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    exit_code = main(["--threads", "0", "--out", str(tmp_path), "bench", "--repeats", "1"])
    assert exit_code == EXIT_USAGE
    assert "[evoids] error EV700: --threads must be >= 1" in capsys.readouterr().err


def test_experiment_without_config_is_a_usage_error(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["experiment"]) == EXIT_USAGE
    assert "experiment requires --config" in capsys.readouterr().err


def test_bad_config_file_is_a_usage_error(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    config = tmp_path / "bad.json"
    _ = config.write_text('{"schema_version": 2, "datasets": []}', encoding="utf-8")
    assert main(["--config", str(config), "experiment"]) == EXIT_USAGE
    assert "EV101" in capsys.readouterr().err


def test_data_errors_exit_with_status_two(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    exit_code = main(["--out", str(tmp_path), "eval", "--dataset", str(tmp_path / "absent.npz")])
    assert exit_code == EXIT_DATA
    assert "[evoids] error EV505" in capsys.readouterr().err


def test_unexpected_exceptions_exit_with_status_three(capsys: pytest.CaptureFixture[str]) -> None:
    def crash(_: argparse.Namespace) -> int:
        msg = "boom"
        raise RuntimeError(msg)

    exit_code = app._run_handler(crash, argparse.Namespace(command="bench"))  # noqa: SLF001
    assert exit_code == EXIT_INTERNAL
    assert "[evoids] internal error: RuntimeError: boom" in capsys.readouterr().err


def test_handler_errors_are_logged_with_codes(caplog: pytest.LogCaptureFixture) -> None:
    def reject(_: argparse.Namespace) -> int:
        msg = "bad flag"
        raise EvoidsUsageError(msg)

    with caplog.at_level("ERROR", logger="evoids.cli"):
        assert app._run_handler(reject, argparse.Namespace(command="select")) == EXIT_USAGE  # noqa: SLF001
    record = next(entry for entry in caplog.records if entry.name == "evoids.cli")
    assert record.getMessage() == "select failed: bad flag"
    assert getattr(record, "error_code", None) == "EV700"
