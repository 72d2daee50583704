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

"""Runtime tests for the `evoids.compat` helpers."""

from __future__ import annotations

import datetime as _dt
import enum as _enum
import importlib
import sys
import typing as _typing
from types import ModuleType

import pytest
import typing_extensions as _typing_extensions

from evoids.compat import UTC, TypedDict, override
from evoids.compat import datetime as compat_datetime
from evoids.compat import enums as compat_enums
from evoids.compat import typing as compat_typing
from evoids.core.model_types import Averaging, ClassifierKind

pytestmark = pytest.mark.unit


class _EnumModule(ModuleType):
    """Fake enum module without StrEnum."""

    Enum: type[_enum.Enum] = _enum.Enum

    def __getattr__(self, name: str) -> object:  # pragma: no cover - typing only
        raise AttributeError(name)


def test_strenum_members_are_strings() -> None:
    assert issubclass(ClassifierKind, str)
    assert ClassifierKind("svm") is ClassifierKind.SVM
    assert str(Averaging.MACRO) == "macro"
    assert f"{ClassifierKind.RF}" == "rf"


def test_utc_timezone_matches_stdlib() -> None:
    assert UTC is compat_datetime.UTC
    assert UTC.utcoffset(None) == _dt.timedelta(0)
    aware = _dt.datetime.now(tz=UTC)
    assert aware.tzinfo is UTC


def test_typing_exports_are_available() -> None:
    assert compat_typing.TypedDict is TypedDict

    class Payload(TypedDict):
        foo: int

    payload: Payload = {"foo": 1}
    assert payload["foo"] == 1

    class Base:
        def name(self) -> str:
            return "base"

    class Child(Base):
        @override
        def name(self) -> str:
            return "child"

    assert Child().name() == "child"


def test_strenum_creates_compat_when_stdlib_missing(monkeypatch: pytest.MonkeyPatch) -> None:
    fake_enum = _EnumModule("enum")
    fake_enum.Enum = _enum.Enum
    monkeypatch.setitem(sys.modules, "enum", fake_enum)

    reloaded = importlib.reload(compat_enums)
    try:
        compat_str_enum = reloaded.StrEnum
        assert compat_str_enum.__name__ == "_CompatStrEnum"
        assert issubclass(compat_str_enum, (str, _enum.Enum))

        class Kind(compat_str_enum):  # type: ignore[misc,valid-type]
            KNN = "knn"

        assert str(Kind.KNN) == "knn"
        assert isinstance(Kind.KNN, str)
    finally:
        monkeypatch.undo()
        importlib.reload(compat_enums)


def test_typing_imports_fall_back_to_typing_extensions(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delattr(_typing, "TypedDict", raising=False)
    monkeypatch.delattr(_typing, "override", raising=False)

    reloaded = importlib.reload(compat_typing)
    try:
        assert reloaded.TypedDict is _typing_extensions.TypedDict
        assert reloaded.override is _typing_extensions.override
    finally:
        monkeypatch.undo()
        importlib.reload(compat_typing)
