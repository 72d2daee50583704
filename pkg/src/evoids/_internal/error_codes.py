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

"""Stable error code registry and exit-code mapping used across evoids."""

from __future__ import annotations

from typing import TYPE_CHECKING, Final, NewType

from evoids.classifiers import ClassifierSpecError, EmptyTrainingSetError, FeatureWidthError, ModelFormatError
from evoids.data import (
    CacheFormatError,
    CsvParseError,
    DatasetValueError,
    EmptyDatasetError,
    SamplingConfigError,
    SchemaError,
    StratificationError,
)
from evoids.experiment.config import (
    ConfigReadError,
    ConfigValidationError,
    InvalidConfigFileError,
    UnsupportedConfigVersionError,
)
from evoids.metrics import LabelVectorError, MetricsError
from evoids.optimizer import BoundsError, OptimizerConfigError, PopulationError, UnknownBenchFunctionError
from evoids.selection import FeatureSelectionError, FsResultFormatError, MaskError

from .exceptions import EvoidsDataError, EvoidsError, EvoidsTypeError, EvoidsUsageError, EvoidsValidationError

if TYPE_CHECKING:
    from collections.abc import Mapping

ErrorCode = NewType("ErrorCode", str)

EXIT_OK: Final[int] = 0
EXIT_USAGE: Final[int] = 1
EXIT_DATA: Final[int] = 2
EXIT_INTERNAL: Final[int] = 3
INTERNAL_ERROR_CODE: Final[ErrorCode] = ErrorCode("EV900")

_ERROR_CODES: dict[type[BaseException], ErrorCode] = {
    EvoidsError: ErrorCode("EV000"),
    EvoidsValidationError: ErrorCode("EV001"),
    EvoidsTypeError: ErrorCode("EV002"),
    EvoidsDataError: ErrorCode("EV003"),
    ConfigValidationError: ErrorCode("EV100"),
    UnsupportedConfigVersionError: ErrorCode("EV101"),
    ConfigReadError: ErrorCode("EV102"),
    InvalidConfigFileError: ErrorCode("EV103"),
    OptimizerConfigError: ErrorCode("EV200"),
    BoundsError: ErrorCode("EV201"),
    PopulationError: ErrorCode("EV202"),
    UnknownBenchFunctionError: ErrorCode("EV203"),
    FeatureSelectionError: ErrorCode("EV300"),
    MaskError: ErrorCode("EV301"),
    FsResultFormatError: ErrorCode("EV302"),
    ClassifierSpecError: ErrorCode("EV400"),
    EmptyTrainingSetError: ErrorCode("EV401"),
    FeatureWidthError: ErrorCode("EV402"),
    ModelFormatError: ErrorCode("EV403"),
    CsvParseError: ErrorCode("EV500"),
    SchemaError: ErrorCode("EV501"),
    StratificationError: ErrorCode("EV502"),
    EmptyDatasetError: ErrorCode("EV503"),
    DatasetValueError: ErrorCode("EV504"),
    CacheFormatError: ErrorCode("EV505"),
    SamplingConfigError: ErrorCode("EV506"),
    MetricsError: ErrorCode("EV600"),
    LabelVectorError: ErrorCode("EV601"),
    EvoidsUsageError: ErrorCode("EV700"),
}


def error_code_for(exc: BaseException) -> ErrorCode:
    """Return a stable error code for an exception.

    Args:
        exc: Exception instance raised by evoids code paths.

    Returns:
        Error code mapped from the exception's class hierarchy; exceptions
        outside the evoids hierarchy map to ``EV900``.
    """
    for cls in type(exc).__mro__:
        code = _ERROR_CODES.get(cls)
        if code:
            return code
    return INTERNAL_ERROR_CODE


def exit_code_for(exc: BaseException) -> int:
    """Map an exception to the process exit code (1 usage/config, 2 data, 3 internal)."""
    if isinstance(exc, (EvoidsValidationError, EvoidsTypeError)):
        return EXIT_USAGE
    if isinstance(exc, EvoidsDataError):
        return EXIT_DATA
    return EXIT_INTERNAL


def error_code_catalog() -> Mapping[str, ErrorCode]:
    """Return a stable mapping of fully-qualified exception names to error codes.

    Returns:
        Mapping of ``<module>.<ExceptionName>`` strings to error codes.
    """
    result: dict[str, ErrorCode] = {}
    for exc_type, code in _ERROR_CODES.items():
        result[f"{exc_type.__module__}.{exc_type.__name__}"] = code
    return result


__all__ = [
    "EXIT_DATA",
    "EXIT_INTERNAL",
    "EXIT_OK",
    "EXIT_USAGE",
    "INTERNAL_ERROR_CODE",
    "ErrorCode",
    "error_code_catalog",
    "error_code_for",
    "exit_code_for",
]
