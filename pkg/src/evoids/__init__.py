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

"""evoids - energy valley optimizer feature selection for intrusion detection.

Provides a population-based optimizer, a wrapper feature selector built on it,
from-scratch reference classifiers, loaders for CICFlowMeter flow datasets and
an experiment runner that compares models with and without feature selection.
"""

from __future__ import annotations

from evoids.exceptions import (
    EvoidsDataError,
    EvoidsError,
    EvoidsTypeError,
    EvoidsUsageError,
    EvoidsValidationError,
)

from .classifiers import ClassifierSpec, load_model, parse_classifier_spec, save_model, train
from .data import Dataset, ingest, load_dataset, preprocess, save_dataset, split
from .experiment import ExperimentConfig, ExperimentReport, load_experiment_config, run_experiment, write_report
from .metrics import Metrics, confusion_matrix, evaluate, scores
from .optimizer import Bounds, EvoConfig, OptResult, optimize, run_bench
from .selection import CostWeights, FeatureMask, FsResult, binarize, fs_cost, select_features
from .services.pipeline import prepare_dataset

__all__ = [
    "Bounds",
    "ClassifierSpec",
    "CostWeights",
    "Dataset",
    "EvoConfig",
    "EvoidsDataError",
    "EvoidsError",
    "EvoidsTypeError",
    "EvoidsUsageError",
    "EvoidsValidationError",
    "ExperimentConfig",
    "ExperimentReport",
    "FeatureMask",
    "FsResult",
    "Metrics",
    "OptResult",
    "__version__",
    "binarize",
    "confusion_matrix",
    "evaluate",
    "fs_cost",
    "ingest",
    "load_dataset",
    "load_experiment_config",
    "load_model",
    "optimize",
    "parse_classifier_spec",
    "prepare_dataset",
    "preprocess",
    "run_bench",
    "run_experiment",
    "save_dataset",
    "save_model",
    "scores",
    "select_features",
    "split",
    "train",
    "write_report",
]

__version__ = "0.1.0"
