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

"""Option groups shared by the dataset, selection and evaluation commands.

Flags default to None so values from ``--config`` can fill the gaps before
the built-in defaults apply.
"""

from __future__ import annotations

import argparse
from pathlib import Path
from typing import TYPE_CHECKING

from evoids.core.model_types import Averaging, ValidationProtocol
from evoids.data import load_dataset
from evoids.optimizer import EvoConfig
from evoids.selection import CostWeights, FsValidation
from evoids.services.pipeline import split_for_training
from evoids.services.settings import RunSettings, resolve_classifier, resolve_settings

from .args import parse_key_value_entries, parse_weights, register_argument

if TYPE_CHECKING:
    from evoids.classifiers import ClassifierSpec
    from evoids.data import SplitPair

__all__ = [
    "averaging_from_args",
    "classifier_from_args",
    "evo_config_from_args",
    "register_model_arguments",
    "register_search_arguments",
    "register_split_arguments",
    "settings_from_args",
    "split_from_args",
    "validation_from_args",
    "weights_from_args",
]


def register_split_arguments(parser: argparse.ArgumentParser) -> None:
    """``--dataset`` cache and the ``--ratio`` of the train/test split."""
    register_argument(
        parser,
        "--dataset",
        type=Path,
        required=True,
        help="Dataset cache written by 'evoids prep' (.npz).",
    )
    register_argument(
        parser,
        "--ratio",
        type=float,
        default=None,
        help="Train share of the stratified split (config value, else 0.8).",
    )


def register_model_arguments(parser: argparse.ArgumentParser, *, default: str = "cart") -> None:
    """``--model`` and repeatable ``--param KEY=VALUE`` hyperparameter overrides."""
    register_argument(
        parser,
        "--model",
        default=default,
        help="Classifier kind (knn, cart, rf, svm), report name (D_Tree, ...) or a model from --config.",
    )
    register_argument(
        parser,
        "--param",
        dest="params",
        action="append",
        default=None,
        metavar="KEY=VALUE",
        help="Hyperparameter override such as k=3 or max_depth=8 (repeatable).",
    )
    register_argument(
        parser,
        "--averaging",
        choices=[mode.value for mode in Averaging],
        default=None,
        help="Aggregate mode for precision, recall, F1, FPR and FNR.",
    )


def register_search_arguments(parser: argparse.ArgumentParser) -> None:
    """Optimizer budget, cost weights and the fitness protocol."""
    group = parser.add_argument_group("search")
    register_argument(group, "--n-particles", type=int, default=None, help="Population size.")
    register_argument(group, "--max-fes", type=int, default=None, help="Objective-evaluation budget.")
    register_argument(group, "--k-neighbors", type=int, default=None, help="Neighbourhood size.")
    register_argument(
        group,
        "--weights",
        default=None,
        metavar="W1,W2,W3,W4",
        help="Cost weights for error rate, FPR, FNR and selected-feature ratio.",
    )
    register_argument(
        group,
        "--protocol",
        choices=[protocol.value for protocol in ValidationProtocol],
        default=None,
        help="Fitness protocol on the training rows.",
    )
    register_argument(group, "--folds", type=int, default=None, help="Folds for the kfold protocol.")
    register_argument(group, "--holdout-ratio", type=float, default=None, help="Fitness-train share for holdout.")
    register_argument(group, "--inner-seed", type=int, default=None, help="Seed of the fitness partitions.")


def settings_from_args(args: argparse.Namespace) -> RunSettings:
    return resolve_settings(
        config_path=args.config,
        seed=args.seed,
        out=args.out,
        threads=args.threads,
        strict_scaling=args.strict_scaling,
    )


def classifier_from_args(args: argparse.Namespace, settings: RunSettings) -> tuple[str, ClassifierSpec]:
    params = parse_key_value_entries(args.params, argument="--param")
    return resolve_classifier(args.model, params, settings.config)


def averaging_from_args(args: argparse.Namespace, settings: RunSettings) -> Averaging:
    if args.averaging is not None:
        return Averaging.from_str(args.averaging)
    return settings.config.averaging if settings.config is not None else Averaging.MACRO


def evo_config_from_args(args: argparse.Namespace, settings: RunSettings) -> EvoConfig:
    """Optimizer settings: flags, then ``--config``, then defaults; the seed is the global one."""
    base = settings.config.evo_config() if settings.config is not None else EvoConfig(seed=settings.seed)
    return EvoConfig(
        n_particles=args.n_particles if args.n_particles is not None else base.n_particles,
        max_fes=args.max_fes if args.max_fes is not None else base.max_fes,
        k_neighbors=args.k_neighbors if args.k_neighbors is not None else base.k_neighbors,
        seed=settings.seed if args.seed is not None or settings.config is None else base.seed,
        stable_step_scale=base.stable_step_scale,
    )


def weights_from_args(args: argparse.Namespace, settings: RunSettings) -> CostWeights:
    parsed = parse_weights(args.weights)
    if parsed is not None:
        return CostWeights(**parsed)
    return settings.config.weights.to_runtime() if settings.config is not None else CostWeights()


def validation_from_args(args: argparse.Namespace, settings: RunSettings) -> tuple[FsValidation, int | None]:
    """Fitness protocol and the explicit inner seed (None derives one from the optimizer seed)."""
    fs = settings.config.fs if settings.config is not None else None
    base = fs.to_runtime() if fs is not None else FsValidation()
    validation = FsValidation(
        protocol=ValidationProtocol(args.protocol) if args.protocol is not None else base.protocol,
        holdout_ratio=args.holdout_ratio if args.holdout_ratio is not None else base.holdout_ratio,
        folds=args.folds if args.folds is not None else base.folds,
    )
    inner_seed = args.inner_seed if args.inner_seed is not None else (fs.inner_seed if fs is not None else None)
    return validation, inner_seed


def split_from_args(args: argparse.Namespace, settings: RunSettings) -> SplitPair:
    """Load ``--dataset`` and split it with the configured ratio and seed."""
    config = settings.config
    ratio = args.ratio if args.ratio is not None else (config.split.ratio if config is not None else 0.8)
    seed = config.split_seed if config is not None and args.seed is None else settings.seed
    pair, _ = split_for_training(load_dataset(args.dataset), ratio, seed, strict_scaling=settings.strict_scaling)
    return pair
