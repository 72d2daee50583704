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

"""``evoids experiment``: run the before/after feature-selection grid from ``--config``."""

from __future__ import annotations

import argparse
from typing import TYPE_CHECKING

from evoids.cli.helpers import echo, register_argument, settings_from_args
from evoids.exceptions import EvoidsUsageError
from evoids.experiment import report_frame, run_experiment, write_report

if TYPE_CHECKING:
    from evoids.cli.types import SubparserCollection


def register_experiment_command(subparsers: SubparserCollection) -> None:
    """Attach the `evoids experiment` command to the CLI.

    Args:
        subparsers: Top-level argparse subparser collection to register commands on.
    """
    experiment = subparsers.add_parser(
        "experiment",
        help="Run the configured dataset x model x feature-selection grid",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
        description="Reads the experiment from the global --config file.",
    )
    register_argument(
        experiment,
        "--fail-on-error",
        action="store_true",
        help="Exit with status 1 when any grid cell failed (the report is still written).",
    )


def execute_experiment(args: argparse.Namespace) -> int:
    """Execute the experiment command.

    Args:
        args: Parsed CLI namespace.

    Returns:
        `0` once the report is written; `1` with ``--fail-on-error`` when a cell failed.

    Raises:
        EvoidsUsageError: If ``--config`` was not given.
    """
    settings = settings_from_args(args)
    if settings.config is None:
        msg = "experiment requires --config <file>"
        raise EvoidsUsageError(msg)
    report = run_experiment(settings.config, threads=settings.threads)
    written = write_report(report, settings.out)
    frame = report_frame(report)
    if not frame.empty:
        echo(frame.to_string(index=False, float_format=lambda value: f"{value:.4f}"))
    for record in report.failures:
        if record.error is not None:
            echo(f"[evoids] {record.label} failed ({record.error.code}): {record.error.message}", err=True)
    echo(f"[evoids] {len(report.records)} records; wrote {written['json']} and {written['csv']}")
    return 1 if args.fail_on_error and report.failures else 0


__all__ = ["execute_experiment", "register_experiment_command"]
