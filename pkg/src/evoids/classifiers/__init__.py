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

"""Reference classifiers behind one train/predict contract."""

from __future__ import annotations

from .base import (
    EmptyTrainingSetError,
    FeatureWidthError,
    ModelFormatError,
    TrainedModel,
    timed_predict,
)
from .forest import ForestModel
from .knn import KnnModel
from .registry import builtin_trainers, fit, resolve_trainer, train
from .serialization import ModelBundle, load_model, save_model
from .specs import (
    DEFAULT_MODEL_NAMES,
    CartSpec,
    ClassifierSpec,
    ClassifierSpecError,
    KnnSpec,
    RfSpec,
    SvmSpec,
    default_specs,
    parse_classifier_spec,
    spec_from_params,
)
from .svm import SvmModel
from .tree import TreeModel

__all__ = [
    "DEFAULT_MODEL_NAMES",
    "CartSpec",
    "ClassifierSpec",
    "ClassifierSpecError",
    "EmptyTrainingSetError",
    "FeatureWidthError",
    "ForestModel",
    "KnnModel",
    "KnnSpec",
    "ModelBundle",
    "ModelFormatError",
    "RfSpec",
    "SvmModel",
    "SvmSpec",
    "TrainedModel",
    "TreeModel",
    "builtin_trainers",
    "default_specs",
    "fit",
    "load_model",
    "parse_classifier_spec",
    "resolve_trainer",
    "save_model",
    "spec_from_params",
    "timed_predict",
    "train",
]
