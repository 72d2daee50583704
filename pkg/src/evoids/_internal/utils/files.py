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

"""Atomic file writers.

Reports, models, caches and provenance sidecars are written to a temporary
file in the destination directory and moved into place with `os.replace`, so
readers only ever observe a complete file at the final path.
"""

from __future__ import annotations

import contextlib
import os
import tempfile
from contextlib import contextmanager
from pathlib import Path
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Iterator

__all__ = ["atomic_path", "write_bytes_atomic", "write_text_atomic"]


@contextmanager
def atomic_path(path: Path, *, suffix: str = ".tmp") -> Iterator[Path]:
    """Yield a sibling temporary path that replaces `path` on clean exit.

    The temporary file is removed when the body raises.

    Args:
        path: Final destination.
        suffix: Suffix for the temporary file; some writers (numpy) key behaviour on it.

    Yields:
        Path the caller should write to.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=suffix, dir=path.parent)
    os.close(fd)
    tmp_path = Path(tmp_name)
    try:
        yield tmp_path
        os.replace(tmp_path, path)
    finally:
        with contextlib.suppress(FileNotFoundError):
            tmp_path.unlink()


def write_text_atomic(path: Path, text: str) -> None:
    """Atomically write UTF-8 text to `path`.

    Args:
        path: Destination file.
        text: Content to write.
    """
    with atomic_path(path) as tmp_path:
        _ = tmp_path.write_text(text, encoding="utf-8")


def write_bytes_atomic(path: Path, payload: bytes) -> None:
    """Atomically write raw bytes to `path`.

    Args:
        path: Destination file.
        payload: Content to write.
    """
    with atomic_path(path) as tmp_path:
        _ = tmp_path.write_bytes(payload)
