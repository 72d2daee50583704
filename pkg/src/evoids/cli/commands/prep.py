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

"""``evoids prep``: ingest, clean and balance CSV files into a dataset cache."""

from __future__ import annotations

import argparse
from pathlib import Path
from typing import TYPE_CHECKING

from evoids.cli.helpers import echo, parse_n_per_label, register_argument, settings_from_args
from evoids.core.model_types import DatasetKind, ImputationStrategy
from evoids.data import PreprocessOptions, save_dataset
from evoids.services.pipeline import balance_dataset

if TYPE_CHECKING:
    from evoids.cli.types import SubparserCollection


def register_prep_command(subparsers: SubparserCollection) -> None:
    """Attach the `evoids prep` command to the CLI.

    Args:
        subparsers: Top-level argparse subparser collection to register commands on.
    """
    prep = subparsers.add_parser(
        "prep",
        help="Clean and downsample CSV files into a dataset cache",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    register_argument(prep, "--input", dest="inputs", type=Path, nargs="+", required=True, help="CSV files.")
    register_argument(
        prep,
        "--kind",
        choices=[kind.value for kind in DatasetKind],
        default=DatasetKind.GENERIC.value,
        help="Column layout of the input files.",
    )
    register_argument(prep, "--name", default="dataset", help="Dataset name; the cache is <out>/<name>.npz.")
    register_argument(
        prep,
        "--n-per-label",
        type=parse_n_per_label,
        default="auto",
        help="Rows kept per class ('auto' keeps the minority count).",
    )
    register_argument(
        prep,
        "--imputation",
        choices=[strategy.value for strategy in ImputationStrategy],
        default=ImputationStrategy.MEDIAN.value,
        help="Missing-value strategy.",
    )
    register_argument(
        prep,
        "--encode-nominal",
        action="store_true",
        help="Label-encode all-text columns instead of rejecting them.",
    )


def execute_prep(args: argparse.Namespace) -> int:
    """Execute the prep command.

    Without ``--strict-scaling`` the cache holds min-max scaled features;
    with it scaling is deferred until after the split.

    Args:
        args: Parsed CLI namespace.

    Returns:
        `0` when the cache was written.
    """
    settings = settings_from_args(args)
    options = PreprocessOptions(
        imputation=ImputationStrategy.from_str(args.imputation),
        encode_nominal=args.encode_nominal,
    )
    dataset, _ = balance_dataset(
        args.inputs,
        DatasetKind.from_str(args.kind),
        n_per_label=args.n_per_label,
        seed=settings.seed,
        options=options,
        scale=not settings.strict_scaling,
        workers=settings.threads,
    )
    path = save_dataset(dataset, settings.out / args.name)
    counts = ", ".join(f"{name}={count}" for name, count in dataset.class_counts().items())
    echo(f"[evoids] {args.name}: {dataset.n_rows} rows x {dataset.n_features} features ({counts})")
    echo(f"[evoids] wrote {path}")
    return 0


__all__ = ["execute_prep", "register_prep_command"]
