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

# pylint: disable=too-many-ancestors, useless-suppression

"""Enumerations shared across evoids.

Every user-facing choice (dataset layout, classifier family, averaging mode,
benchmark function, logging option) is a `StrEnum` so it round-trips through
argparse choices, JSON configs and report payloads without translation tables.
"""

from __future__ import annotations

from typing import TypeVar

from evoids.compat import StrEnum

_EnumT = TypeVar("_EnumT", bound=StrEnum)


def _lookup(cls: type[_EnumT], raw: str, label: str) -> _EnumT:
    value = raw.strip().lower().replace("_", "-")
    try:
        return cls(value)
    except ValueError as exc:
        allowed = ", ".join(member.value for member in cls)
        msg = f"Unknown {label} '{raw}' (expected one of: {allowed})"
        raise ValueError(msg) from exc


class LogFormat(StrEnum):
    """Logging output formats."""

    TEXT = "text"
    JSON = "json"

    @classmethod
    def from_str(cls, raw: str) -> LogFormat:
        """Parse a log format name.

        Args:
            raw: Case-insensitive format name.

        Returns:
            Matching `LogFormat`.

        Raises:
            ValueError: If the name is unknown.
        """
        return _lookup(cls, raw, "log format")


class LogComponent(StrEnum):
    """Logical components attached to structured log records."""

    CLI = "cli"
    DATA = "data"
    OPTIMIZER = "optimizer"
    SELECTION = "selection"
    CLASSIFIER = "classifier"
    METRICS = "metrics"
    EXPERIMENT = "experiment"
    BENCH = "bench"


class DatasetKind(StrEnum):
    """Flow-record CSV layouts understood by the schema registry.

    Attributes:
        CIC_DDOS2019: CICFlowMeter export of the CIC-DDoS2019 corpus (88 columns).
        CSE_CIC_IDS2018: CICFlowMeter export of the CSE-CIC-IDS2018 corpus (80 columns).
        GENERIC: Any labelled numeric CSV; only the ``Label`` column is required.
    """

    CIC_DDOS2019 = "cic-ddos2019"
    CSE_CIC_IDS2018 = "cse-cic-ids2018"
    GENERIC = "generic"

    @classmethod
    def from_str(cls, raw: str) -> DatasetKind:
        """Parse a dataset kind, accepting underscores in place of dashes.

        Args:
            raw: Kind name such as ``cic-ddos2019`` or ``CSE_CIC_IDS2018``.

        Returns:
            Matching `DatasetKind`.

        Raises:
            ValueError: If the name is unknown.
        """
        return _lookup(cls, raw, "dataset kind")


class ClassifierKind(StrEnum):
    """Reference classifier families."""

    KNN = "knn"
    CART = "cart"
    RF = "rf"
    SVM = "svm"

    @classmethod
    def from_str(cls, raw: str) -> ClassifierKind:
        """Parse a classifier kind.

        Args:
            raw: Kind name (``knn``, ``cart``, ``rf`` or ``svm``).

        Returns:
            Matching `ClassifierKind`.

        Raises:
            ValueError: If the name is unknown.
        """
        return _lookup(cls, raw, "classifier kind")


class Averaging(StrEnum):
    """How per-class scores fold into the aggregate precision/recall/F1/FPR/FNR.

    Attributes:
        MACRO: Unweighted mean over classes.
        WEIGHTED: Mean weighted by true-class support.
        BINARY: Two-class problems only; aggregates are the scores of class id 1.
    """

    MACRO = "macro"
    WEIGHTED = "weighted"
    BINARY = "binary"

    @classmethod
    def from_str(cls, raw: str) -> Averaging:
        """Parse an averaging mode.

        Args:
            raw: Mode name.

        Returns:
            Matching `Averaging`.

        Raises:
            ValueError: If the name is unknown.
        """
        return _lookup(cls, raw, "averaging mode")


class ImputationStrategy(StrEnum):
    """Missing-value imputation strategies."""

    MEDIAN = "median"
    KNN = "knn"

    @classmethod
    def from_str(cls, raw: str) -> ImputationStrategy:
        """Parse an imputation strategy.

        Args:
            raw: Strategy name.

        Returns:
            Matching `ImputationStrategy`.

        Raises:
            ValueError: If the name is unknown.
        """
        return _lookup(cls, raw, "imputation strategy")


class ValidationProtocol(StrEnum):
    """Fitness-time validation protocol used when scoring feature masks."""

    HOLDOUT = "holdout"
    KFOLD = "kfold"


class BenchFunction(StrEnum):
    """Analytic test functions available to the optimizer bench."""

    SPHERE = "sphere"
    RASTRIGIN = "rastrigin"
    ROSENBROCK = "rosenbrock"

    @classmethod
    def from_str(cls, raw: str) -> BenchFunction:
        """Parse a benchmark function name.

        Args:
            raw: Function name.

        Returns:
            Matching `BenchFunction`.

        Raises:
            ValueError: If the name is unknown.
        """
        return _lookup(cls, raw, "benchmark function")


class RecordStatus(StrEnum):
    """Outcome of a single experiment grid cell."""

    OK = "ok"
    ERROR = "error"


__all__ = [
    "Averaging",
    "BenchFunction",
    "ClassifierKind",
    "DatasetKind",
    "ImputationStrategy",
    "LogComponent",
    "LogFormat",
    "RecordStatus",
    "ValidationProtocol",
]
