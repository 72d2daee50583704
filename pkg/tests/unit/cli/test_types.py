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

"""Unit tests for CLI type helpers."""

from __future__ import annotations

import argparse

import pytest

from evoids.cli import types
from evoids.cli.commands.bench import register_bench_command

pytestmark = [pytest.mark.unit, pytest.mark.cli]


def test_subparser_collection_exported_via_all() -> None:
    """Ensure the shared CLI protocol is publicly re-exported."""
    assert "SubparserCollection" in types.__all__


def test_argparse_subparsers_satisfy_the_protocol() -> None:
    parser = argparse.ArgumentParser(prog="evoids")
    collection: types.SubparserCollection = parser.add_subparsers(dest="command")
    register_bench_command(collection)
    args = parser.parse_args(["bench", "--function", "rastrigin", "--dims", "3"])
    assert args.command == "bench"
    assert args.function == "rastrigin"
    assert args.dims == 3  # noqa: PLR2004
