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

"""Canonical JSON types and helpers used across evoids.

Models, reports, provenance sidecars and log records all pass through these
helpers, so numpy scalars and arrays are converted here once instead of at
each call site. The module depends on nothing else in the package.
"""

from __future__ import annotations

import hashlib
import json
from enum import Enum
from pathlib import PurePath
from typing import TypeAlias, cast

import numpy as np
from pydantic import JsonValue

__all__ = [
    "JSONList",
    "JSONMapping",
    "JSONValue",
    "as_mapping",
    "canonical_dumps",
    "digest_payload",
    "dumps_pretty",
    "normalise_for_json",
]

JSONValue: TypeAlias = JsonValue
JSONMapping = dict[str, JsonValue]
JSONList = list[JsonValue]


def as_mapping(value: object) -> JSONMapping:
    """Return `value` as a JSON mapping if it is a dict, else an empty mapping.

    Args:
        value: Arbitrary decoded JSON value.

    Returns:
        The mapping itself, or an empty mapping.
    """
    return cast("JSONMapping", value) if isinstance(value, dict) else {}


def normalise_for_json(value: object) -> JSONValue:
    """Recursively convert enums, numpy values and paths into plain JSON values.

    Args:
        value: Arbitrary object hierarchy built from mappings, sequences,
            enums, numpy scalars/arrays and primitives.

    Returns:
        A structure made only of `dict`/`list`/`str`/`int`/`float`/`bool`/None.
    """

    def _convert(obj: object) -> JSONValue:
        if isinstance(obj, Enum):
            return cast("JSONValue", obj.value)
        if isinstance(obj, np.ndarray):
            return _convert(obj.tolist())
        if isinstance(obj, np.bool_):
            return bool(obj)
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.floating):
            return float(obj)
        if isinstance(obj, PurePath):
            return obj.as_posix()
        if isinstance(obj, dict):
            mapping_obj = cast("dict[object, object]", obj)
            result: dict[str, JSONValue] = {}
            for key, raw_val in mapping_obj.items():
                norm_key = str(key.value) if isinstance(key, Enum) else str(key)
                result[norm_key] = _convert(raw_val)
            return result
        if isinstance(obj, (list, tuple)):
            return [_convert(item) for item in cast("list[object]", obj)]
        if isinstance(obj, (str, int, float, bool)) or obj is None:
            return cast("JSONValue", obj)
        return str(obj)

    return _convert(value)


def canonical_dumps(payload: object) -> str:
    """Serialise `payload` deterministically (sorted keys, compact separators).

    Args:
        payload: Value accepted by `normalise_for_json`.

    Returns:
        Canonical JSON text.
    """
    return json.dumps(normalise_for_json(payload), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def dumps_pretty(payload: object) -> str:
    """Serialise `payload` for files meant to be read by people and diffed.

    Args:
        payload: Value accepted by `normalise_for_json`.

    Returns:
        Indented JSON text terminated by a newline.
    """
    return json.dumps(normalise_for_json(payload), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def digest_payload(payload: object) -> str:
    """Return the SHA-256 hex digest of the canonical JSON form of `payload`.

    Args:
        payload: Value accepted by `normalise_for_json`.

    Returns:
        Lowercase hex digest.
    """
    return hashlib.sha256(canonical_dumps(payload).encode("utf-8")).hexdigest()
