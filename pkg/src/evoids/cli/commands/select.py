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

"""``evoids select``: run the wrapper feature selection on a dataset cache."""

from __future__ import annotations

import argparse
from pathlib import Path
from typing import TYPE_CHECKING

from evoids.cli.helpers import (
    averaging_from_args,
    classifier_from_args,
    echo,
    evo_config_from_args,
    register_argument,
    register_model_arguments,
    register_search_arguments,
    register_split_arguments,
    settings_from_args,
    split_from_args,
    validation_from_args,
    weights_from_args,
)
from evoids.selection import select_features, write_fs_result

if TYPE_CHECKING:
    from evoids.cli.types import SubparserCollection


def register_select_command(subparsers: SubparserCollection) -> None:
    """Attach the `evoids select` command to the CLI.

    Args:
        subparsers: Top-level argparse subparser collection to register commands on.
    """
    select = subparsers.add_parser(
        "select",
        help="Search for a feature subset on the training split",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    register_split_arguments(select)
    register_model_arguments(select)
    register_search_arguments(select)
    register_argument(
        select,
        "--output",
        type=Path,
        default=None,
        help="Result file (default: <out>/<dataset>__<model>__fs.json).",
    )


def execute_select(args: argparse.Namespace) -> int:
    """Execute the select command.

    Args:
        args: Parsed CLI namespace.

    Returns:
        `0` when the selection result was written.
    """
    settings = settings_from_args(args)
    name, spec = classifier_from_args(args, settings)
    validation, inner_seed = validation_from_args(args, settings)
    pair = split_from_args(args, settings)
    result = select_features(
        pair.train,
        spec,
        weights_from_args(args, settings),
        evo_config_from_args(args, settings),
        validation=validation,
        inner_seed=inner_seed,
        averaging=averaging_from_args(args, settings),
        workers=settings.threads,
    )
    output = args.output or settings.out / f"{args.dataset.stem}__{name}__fs.json"
    write_fs_result(result, output)
    echo(
        f"[evoids] {name}: kept {result.mask.count} of {result.mask.size} features, "
        f"cost {result.cost:.6g} after {result.opt.evaluations_used} evaluations",
    )
    echo(f"[evoids] selected: {', '.join(result.selected_names)}")
    echo(f"[evoids] wrote {output}")
    return 0


__all__ = ["execute_select", "register_select_command"]
