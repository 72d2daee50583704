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

# ignore JUSTIFIED: argument helpers mirror argparse signatures and allow passthrough
# typing without constraining caller kwargs
# ruff: noqa: ANN401  # pylint: disable=redundant-returns-doc,unnecessary-ellipsis

"""Argument parser helpers used across CLI commands."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any, Literal, Protocol

from evoids.exceptions import EvoidsUsageError
from evoids.runtime import consume

if TYPE_CHECKING:
    import argparse
    from collections.abc import Sequence

__all__ = [
    "ArgumentRegistrar",
    "parse_comma_separated",
    "parse_key_value_entries",
    "parse_n_per_label",
    "parse_weights",
    "register_argument",
]


class ArgumentRegistrar(Protocol):
    """Anything with `ArgumentParser.add_argument` (parsers and argument groups)."""

    def add_argument(
        self,
        *args: Any,
        **kwargs: Any,
    ) -> argparse.Action:
        """Expose `ArgumentParser.add_argument` so helpers can operate generically.

        Args:
            *args: Positional argument configuration passed through to ``add_argument``.
            **kwargs: Keyword options forwarded to ``add_argument``.

        Returns:
            argparse.Action: The action object created for the registered argument.
        """
        ...  # pragma: no cover


def register_argument(
    registrar: ArgumentRegistrar,
    *args: Any,
    **kwargs: Any,
) -> None:
    """Register an argument on a parser/argument group, discarding the action handle.

    Args:
        registrar: Parser or argument group on which to register the option.
        *args: Positional flags and option strings forwarded to ``add_argument``.
        **kwargs: Keyword options forwarded to ``add_argument``.
    """
    consume(registrar.add_argument(*args, **kwargs))


def parse_comma_separated(raw: str | None) -> list[str]:
    """Return the non-empty, stripped items of a comma-separated string."""
    if not raw:
        return []
    return [item.strip() for item in raw.split(",") if item.strip()]


def parse_key_value_entries(
    entries: Sequence[str] | None,
    *,
    argument: str,
) -> dict[str, str]:
    """Parse KEY=VALUE strings supplied via a repeatable flag.

    Args:
        entries: Raw CLI tokens passed to the flag.
        argument: Flag name used in error messages.

    Returns:
        Mapping of stripped keys to stripped values; later entries win.

    Raises:
        EvoidsUsageError: If a token omits the ``=`` separator or has an empty
            key or value.
    """
    pairs: dict[str, str] = {}
    for raw in entries or ():
        if "=" not in raw:
            msg = f"{argument} expects KEY=VALUE syntax (got '{raw}')"
            raise EvoidsUsageError(msg)
        key, value = (part.strip() for part in raw.split("=", 1))
        if not key or not value:
            msg = f"{argument} expects non-empty KEY and VALUE (got '{raw}')"
            raise EvoidsUsageError(msg)
        pairs[key] = value
    return pairs


def parse_n_per_label(raw: str) -> int | Literal["auto"]:
    """Parse ``--n-per-label``: ``auto`` or a positive integer."""
    if raw.strip().lower() == "auto":
        return "auto"
    try:
        value = int(raw)
    except ValueError as exc:
        msg = f"--n-per-label expects 'auto' or a positive integer (got '{raw}')"
        raise EvoidsUsageError(msg) from exc
    if value < 1:
        msg = f"--n-per-label must be >= 1 (got {value})"
        raise EvoidsUsageError(msg)
    return value


def parse_weights(raw: str | None) -> dict[str, float] | None:
    """Parse ``--weights w1,w2,w3,w4`` (missing trailing weights default to 0)."""
    items = parse_comma_separated(raw)
    if not items:
        return None
    if len(items) > 4:  # noqa: PLR2004
        msg = f"--weights takes at most four values (got {len(items)})"
        raise EvoidsUsageError(msg)
    try:
        values = [float(item) for item in items]
    except ValueError as exc:
        msg = f"--weights expects comma-separated numbers (got '{raw}')"
        raise EvoidsUsageError(msg) from exc
    values += [0.0] * (4 - len(values))
    return dict(zip(("w1", "w2", "w3", "w4"), values, strict=True))
