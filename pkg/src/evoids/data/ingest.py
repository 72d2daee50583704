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

"""CSV ingestion with header validation against the schema registry."""

from __future__ import annotations

import logging
import re
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import TYPE_CHECKING, Final

import pandas as pd

from evoids.core.model_types import DatasetKind, LogComponent
from evoids.logging import structured_extra

from .models import CsvParseError, EmptyDatasetError, RawTable, SchemaError
from .schema import DatasetSchema, normalise_header, schema_for

if TYPE_CHECKING:
    from collections.abc import Sequence

logger: logging.Logger = logging.getLogger("evoids.data")

__all__ = ["ingest", "read_csv_table"]

_LINE_PATTERN: Final[re.Pattern[str]] = re.compile(r"line (\d+)")


def read_csv_table(path: Path) -> pd.DataFrame:
    """Read one CSV file as string cells with a normalised header.

    Args:
        path: UTF-8 CSV file with a header row.

    Returns:
        Frame whose cells are all strings.

    Raises:
        CsvParseError: If the file is missing, empty or ragged.
    """
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8")
    except FileNotFoundError as exc:
        raise CsvParseError(path, None, "file not found") from exc
    except pd.errors.EmptyDataError as exc:
        raise CsvParseError(path, None, "file is empty") from exc
    except pd.errors.ParserError as exc:
        match = _LINE_PATTERN.search(str(exc))
        raise CsvParseError(path, int(match.group(1)) if match else None, str(exc).strip()) from exc
    except UnicodeDecodeError as exc:
        raise CsvParseError(path, None, f"not valid UTF-8 ({exc.reason})") from exc

    short_rows = frame.isna().any(axis=1)
    if bool(short_rows.any()):
        first = int(short_rows.to_numpy().argmax())
        # +2: one for the header line, one for one-based numbering.
        raise CsvParseError(path, first + 2, f"expected {frame.shape[1]} fields, found fewer")
    frame.columns = [normalise_header(str(name)) for name in frame.columns]
    return frame


def _check_header(path: Path, header: tuple[str, ...], schema: DatasetSchema) -> list[str]:
    missing = schema.missing(header)
    extra = schema.unexpected(header)
    if missing or extra:
        raise SchemaError(f"header does not match the {schema.kind} layout", missing=missing, extra=extra, path=path)
    deviations: list[str] = []
    if schema.strict and len(header) != schema.expected_width:
        deviations.append(
            f"{path.name}: {len(header)} columns (registry lists {schema.expected_width}; "
            f"optional columns present: {', '.join(name for name in header if name in schema.optional)})",
        )
    return deviations


def ingest(
    paths: Sequence[Path | str],
    kind: DatasetKind | str,
    *,
    workers: int = 1,
) -> RawTable:
    """Read and concatenate CSV files of one dataset kind.

    Files are parsed concurrently when `workers > 1`; rows are always
    concatenated in input path order.

    Args:
        paths: Input files, at least one.
        kind: Expected layout.
        workers: Files parsed concurrently.

    Returns:
        The concatenated raw table.

    Raises:
        CsvParseError: If a file cannot be parsed.
        SchemaError: If a header does not match the registry, or generic files
            disagree on their columns.
        EmptyDatasetError: If `paths` is empty.
    """
    schema = schema_for(kind)
    sources = tuple(Path(path) for path in paths)
    if not sources:
        stage = "ingest (no input files)"
        raise EmptyDatasetError(stage)

    if workers > 1 and len(sources) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            frames = list(executor.map(read_csv_table, sources))
    else:
        frames = [read_csv_table(path) for path in sources]

    deviations: list[str] = []
    first_columns = tuple(str(name) for name in frames[0].columns)
    for path, frame in zip(sources, frames, strict=True):
        header = tuple(str(name) for name in frame.columns)
        deviations.extend(_check_header(path, header, schema))
        if not schema.strict and set(header) != set(first_columns):
            raise SchemaError(
                f"generic files must share one header (differs from {sources[0].name})",
                missing=[name for name in first_columns if name not in header],
                extra=[name for name in header if name not in first_columns],
                path=path,
            )

    combined = pd.concat(frames, ignore_index=True, sort=False).fillna("")
    for note in deviations:
        logger.warning(
            "Header deviation: %s",
            note,
            extra=structured_extra(component=LogComponent.DATA, dataset=schema.kind.value),
        )
    logger.info(
        "Ingested %d rows from %d file(s)",
        len(combined),
        len(sources),
        extra=structured_extra(
            component=LogComponent.DATA,
            dataset=schema.kind.value,
            counts={"rows": len(combined), "files": len(sources), "columns": combined.shape[1]},
        ),
    )
    return RawTable(frame=combined, kind=schema.kind, sources=sources, deviations=tuple(deviations))
