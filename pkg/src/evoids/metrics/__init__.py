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

"""Confusion matrices, evaluation scores and their exports."""

from __future__ import annotations

from .confusion import ConfusionMatrix, LabelVectorError, MetricsError, confusion_matrix
from .evaluation import evaluate, evaluate_with_matrix
from .export import CONFUSION_CORNER_LABEL, confusion_frame, write_confusion_csv
from .scores import BINARY_POSITIVE_CLASS, ClassScores, Metrics, f1_score, scores

__all__ = [
    "BINARY_POSITIVE_CLASS",
    "CONFUSION_CORNER_LABEL",
    "ClassScores",
    "ConfusionMatrix",
    "LabelVectorError",
    "Metrics",
    "MetricsError",
    "confusion_frame",
    "confusion_matrix",
    "evaluate",
    "evaluate_with_matrix",
    "f1_score",
    "scores",
    "write_confusion_csv",
]
