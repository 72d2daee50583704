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

"""``evoids describe``: class counts and per-column statistics (data exploration)."""

from __future__ import annotations

import argparse
from pathlib import Path
from typing import TYPE_CHECKING

from evoids.cli.helpers import echo, register_argument, settings_from_args
from evoids.core.model_types import DatasetKind
from evoids.data import describe_dataset, describe_table, ingest, load_dataset
from evoids.exceptions import EvoidsUsageError
from evoids.json import dumps_pretty
from evoids.runtime import write_text_atomic

if TYPE_CHECKING:
    from evoids.cli.types import SubparserCollection
    from evoids.data import DatasetSummary


def register_describe_command(subparsers: SubparserCollection) -> None:
    """Attach the `evoids describe` command to the CLI.

    Args:
        subparsers: Top-level argparse subparser collection to register commands on.
    """
    describe = subparsers.add_parser(
        "describe",
        help="Summarise raw CSV files or a dataset cache",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    source = describe.add_mutually_exclusive_group(required=True)
    register_argument(source, "--input", dest="inputs", type=Path, nargs="+", help="Raw CSV files.")
    register_argument(source, "--dataset", type=Path, help="Dataset cache written by 'evoids prep'.")
    register_argument(
        describe,
        "--kind",
        choices=[kind.value for kind in DatasetKind],
        default=DatasetKind.GENERIC.value,
        help="Column layout of --input files.",
    )
    register_argument(describe, "--name", default=None, help="Output file prefix (default: input stem).")


def _summary(args: argparse.Namespace, threads: int) -> tuple[str, DatasetSummary]:
    if args.dataset is not None:
        return args.name or args.dataset.stem, describe_dataset(load_dataset(args.dataset))
    if not args.inputs:
        msg = "describe needs --input or --dataset"
        raise EvoidsUsageError(msg)
    raw = ingest(args.inputs, DatasetKind.from_str(args.kind), workers=threads)
    return args.name or args.inputs[0].stem, describe_table(raw)


def execute_describe(args: argparse.Namespace) -> int:
    """Execute the describe command.

    Writes ``<name>_describe.json`` and ``<name>_columns.csv`` under ``--out``.

    Args:
        args: Parsed CLI namespace.

    Returns:
        `0` when the summary was written.
    """
    settings = settings_from_args(args)
    name, summary = _summary(args, settings.threads)
    json_path = settings.out / f"{name}_describe.json"
    csv_path = settings.out / f"{name}_columns.csv"
    write_text_atomic(json_path, dumps_pretty(summary.model_dump(mode="json")))
    write_text_atomic(csv_path, summary.column_frame().to_csv(index=False, lineterminator="\n"))
    echo(f"[evoids] {name}: {summary.rows} rows, {summary.columns} columns")
    for label, count in summary.class_counts.items():
        echo(f"  {label}: {count}")
    missing = sum(stats.missing for stats in summary.column_stats)
    echo(f"[evoids] {missing} missing cells; wrote {json_path} and {csv_path}")
    return 0


__all__ = ["execute_describe", "register_describe_command"]
