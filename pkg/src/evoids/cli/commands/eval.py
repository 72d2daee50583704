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

"""``evoids eval``: train on the training split and score on the test split."""

from __future__ import annotations

import argparse
from pathlib import Path
from typing import TYPE_CHECKING

from evoids.classifiers import fit, save_model
from evoids.cli.helpers import (
    averaging_from_args,
    classifier_from_args,
    echo,
    register_argument,
    register_model_arguments,
    register_split_arguments,
    settings_from_args,
    split_from_args,
)
from evoids.json import dumps_pretty
from evoids.metrics import evaluate_with_matrix, write_confusion_csv
from evoids.runtime import write_text_atomic
from evoids.selection import FeatureMask, load_fs_result

if TYPE_CHECKING:
    from evoids.cli.types import SubparserCollection


def register_eval_command(subparsers: SubparserCollection) -> None:
    """Attach the `evoids eval` command to the CLI.

    Args:
        subparsers: Top-level argparse subparser collection to register commands on.
    """
    evaluate = subparsers.add_parser(
        "eval",
        help="Train a classifier and report held-out metrics",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    register_split_arguments(evaluate)
    register_model_arguments(evaluate)
    register_argument(
        evaluate,
        "--mask",
        type=Path,
        default=None,
        help="Selection result from 'evoids select'; restricts both splits to its features.",
    )
    register_argument(
        evaluate,
        "--save-model",
        type=Path,
        default=None,
        help="Also write the trained model as JSON.",
    )


def execute_eval(args: argparse.Namespace) -> int:
    """Execute the eval command.

    Writes ``<dataset>__<model>__<fs|base>_metrics.json`` and the matching
    confusion CSV under ``--out``.

    Args:
        args: Parsed CLI namespace.

    Returns:
        `0` when the metrics were written.
    """
    settings = settings_from_args(args)
    name, spec = classifier_from_args(args, settings)
    pair = split_from_args(args, settings)
    train, test = pair.train, pair.test
    if args.mask is not None:
        document = load_fs_result(args.mask)
        mask = FeatureMask.from_names(document.selected_names, train.feature_names)
        train, test = train.select(mask.bits), test.select(mask.bits)
    model = fit(spec, train.features, train.labels, train.n_classes, seed=settings.seed, workers=settings.threads)
    averaging = averaging_from_args(args, settings)
    metrics, matrix = evaluate_with_matrix(model, test.features, test.labels, averaging=averaging)
    stem = f"{args.dataset.stem}__{name}__{'fs' if args.mask is not None else 'base'}"
    metrics_path = settings.out / f"{stem}_metrics.json"
    payload = {
        "model": name,
        "spec": spec.model_dump(mode="json"),
        "features": list(train.feature_names),
        "class_names": list(train.class_names),
        "metrics": metrics.model_dump(mode="json"),
    }
    write_text_atomic(metrics_path, dumps_pretty(payload))
    write_confusion_csv(matrix, train.class_names, settings.out / "confusion" / f"{stem}.csv")
    if args.save_model is not None:
        save_model(model, spec, args.save_model)
    echo(
        f"[evoids] {name} on {train.n_features} features: accuracy {metrics.accuracy:.4f}, "
        f"precision {metrics.precision_macro:.4f}, recall {metrics.recall_macro:.4f}, f1 {metrics.f1_macro:.4f}",
    )
    echo(f"[evoids] train {metrics.train_time:.3f}s, test {metrics.test_time:.3f}s; wrote {metrics_path}")
    return 0


__all__ = ["execute_eval", "register_eval_command"]
