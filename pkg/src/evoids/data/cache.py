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

"""Versioned columnar cache for prepared datasets.

A cache is a compressed ``.npz`` archive with the arrays ``matrix``,
``labels``, ``feature_names``, ``class_names`` and ``format_version``, plus a
``<stem>.provenance.json`` sidecar holding the `Provenance` document. Both are
written atomically.
"""

from __future__ import annotations

import logging
import zipfile
from pathlib import Path
from typing import Final

import numpy as np
from pydantic import ValidationError

from evoids.core.model_types import LogComponent
from evoids.logging import structured_extra
from evoids.runtime import atomic_path, write_text_atomic

from .models import CacheFormatError, Dataset, DatasetValueError, Provenance

logger: logging.Logger = logging.getLogger("evoids.data")

__all__ = ["CACHE_FORMAT_VERSION", "CACHE_SUFFIX", "load_dataset", "provenance_path", "save_dataset"]

CACHE_FORMAT_VERSION: Final[int] = 1
CACHE_SUFFIX: Final[str] = ".npz"
_REQUIRED_ARRAYS: Final[tuple[str, ...]] = ("matrix", "labels", "feature_names", "class_names", "format_version")


def _cache_path(path: Path) -> Path:
    return path if path.suffix == CACHE_SUFFIX else path.with_name(path.name + CACHE_SUFFIX)


def provenance_path(path: Path) -> Path:
    """Return the sidecar path for the cache at `path`."""
    cache = _cache_path(path)
    return cache.with_name(f"{cache.stem}.provenance.json")


def save_dataset(dataset: Dataset, path: Path) -> Path:
    """Write `dataset` and its provenance sidecar.

    Args:
        dataset: Dataset to store.
        path: Cache file; ``.npz`` is appended when missing.

    Returns:
        The cache file path.
    """
    cache = _cache_path(path)
    with atomic_path(cache, suffix=CACHE_SUFFIX) as tmp_path:
        np.savez_compressed(
            tmp_path,
            matrix=dataset.features,
            labels=dataset.labels,
            feature_names=np.array(dataset.feature_names, dtype=str),
            class_names=np.array(dataset.class_names, dtype=str),
            format_version=np.array(CACHE_FORMAT_VERSION, dtype=np.int64),
        )
    write_text_atomic(provenance_path(cache), dataset.provenance.model_dump_json(indent=2) + "\n")
    logger.info(
        "Cached %d rows",
        dataset.n_rows,
        extra=structured_extra(component=LogComponent.DATA, path=cache),
    )
    return cache


def load_dataset(path: Path) -> Dataset:
    """Read a dataset written by `save_dataset`.

    Raises:
        CacheFormatError: If the archive or sidecar is missing, malformed, or of
            an unsupported format version.
    """
    cache = _cache_path(path)
    try:
        with np.load(cache, allow_pickle=False) as archive:
            absent = [name for name in _REQUIRED_ARRAYS if name not in archive.files]
            if absent:
                raise CacheFormatError(cache, f"missing arrays: {', '.join(absent)}")
            version = int(archive["format_version"])
            if version != CACHE_FORMAT_VERSION:
                raise CacheFormatError(cache, f"format_version {version} (expected {CACHE_FORMAT_VERSION})")
            matrix = archive["matrix"]
            labels = archive["labels"]
            feature_names = tuple(str(name) for name in archive["feature_names"])
            class_names = tuple(str(name) for name in archive["class_names"])
    except (OSError, ValueError, zipfile.BadZipFile) as exc:
        raise CacheFormatError(cache, str(exc)) from exc

    sidecar = provenance_path(cache)
    try:
        provenance = Provenance.model_validate_json(sidecar.read_text(encoding="utf-8"))
    except (OSError, ValidationError) as exc:
        raise CacheFormatError(sidecar, str(exc)) from exc
    try:
        return Dataset(matrix, labels, feature_names, class_names, provenance)
    except DatasetValueError as exc:
        raise CacheFormatError(cache, str(exc)) from exc
