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

"""Unit tests for Utilities Utils."""

from __future__ import annotations

import json
from enum import Enum
from pathlib import Path, PurePosixPath

import numpy as np
import pytest

from evoids._internal.utils import atomic_path, chunk_bounds, consume, write_bytes_atomic, write_text_atomic
from evoids.json import as_mapping, canonical_dumps, digest_payload, dumps_pretty, normalise_for_json
from evoids.seeding import MAX_SEED, derive_seed, stream, tag

pytestmark = pytest.mark.unit


class _Colour(Enum):
    RED = "red"


def test_write_text_atomic_creates_parents(tmp_path: Path) -> None:
    target = tmp_path / "nested" / "dir" / "out.txt"
    write_text_atomic(target, "hello\n")
    assert target.read_text(encoding="utf-8") == "hello\n"
    assert [path.name for path in target.parent.iterdir()] == ["out.txt"]


def test_write_bytes_atomic_replaces_existing(tmp_path: Path) -> None:
    target = tmp_path / "blob.bin"
    consume(target.write_bytes(b"old"))
    write_bytes_atomic(target, b"new")
    assert target.read_bytes() == b"new"


def test_atomic_path_discards_temporary_on_failure(tmp_path: Path) -> None:
    target = tmp_path / "report.json"
    message = "writer failed"
    with pytest.raises(RuntimeError, match=message), atomic_path(target) as tmp:
        consume(tmp.write_text("partial", encoding="utf-8"))
        raise RuntimeError(message)
    assert not target.exists()
    assert list(tmp_path.iterdir()) == []


def test_chunk_bounds_cover_range() -> None:
    assert list(chunk_bounds(7, 3)) == [(0, 3), (3, 6), (6, 7)]
    assert list(chunk_bounds(2, 0)) == [(0, 1), (1, 2)]
    assert list(chunk_bounds(0, 4)) == []


def test_normalise_for_json_converts_numpy_enums_and_paths() -> None:
    payload = {
        _Colour.RED: np.array([1, 2]),
        "flag": np.bool_(True),
        "count": np.int64(3),
        "score": np.float32(0.5),
        "path": PurePosixPath("a/b.csv"),
        "items": (1, "x"),
    }
    assert normalise_for_json(payload) == {
        "red": [1, 2],
        "flag": True,
        "count": 3,
        "score": 0.5,
        "path": "a/b.csv",
        "items": [1, "x"],
    }


def test_canonical_forms_are_stable() -> None:
    left = {"b": 1, "a": [2, 3]}
    right = {"a": [2, 3], "b": 1}
    assert canonical_dumps(left) == canonical_dumps(right) == '{"a":[2,3],"b":1}'
    assert digest_payload(left) == digest_payload(right)
    assert len(digest_payload(left)) == 64
    pretty = dumps_pretty(left)
    assert pretty.endswith("\n")
    assert json.loads(pretty) == left


def test_as_mapping_ignores_non_dicts() -> None:
    assert as_mapping({"a": 1}) == {"a": 1}
    assert as_mapping([1, 2]) == {}


def test_streams_are_keyed_and_reproducible() -> None:
    first = stream(5, tag("split"), 0).random(4)
    again = stream(5, tag("split"), 0).random(4)
    other_key = stream(5, tag("split"), 1).random(4)
    other_seed = stream(6, tag("split"), 0).random(4)
    np.testing.assert_array_equal(first, again)
    assert not np.array_equal(first, other_key)
    assert not np.array_equal(first, other_seed)


def test_tag_and_derive_seed_are_stable() -> None:
    assert tag("split") == tag("split")
    assert tag("split") != tag("folds")
    derived = derive_seed(1, 2, 3)
    assert derived == derive_seed(1, 2, 3)
    assert 0 <= derived <= MAX_SEED
    assert derived != derive_seed(1, 2, 4)
