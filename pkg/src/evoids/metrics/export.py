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

"""CSV export of confusion matrices."""

from __future__ import annotations

from typing import TYPE_CHECKING, Final

import pandas as pd

from evoids.runtime import write_text_atomic

from .confusion import MetricsError

if TYPE_CHECKING:
    from collections.abc import Sequence
    from pathlib import Path

    from .confusion import ConfusionMatrix

__all__ = ["CONFUSION_CORNER_LABEL", "confusion_frame", "write_confusion_csv"]

CONFUSION_CORNER_LABEL: Final[str] = "true\\predicted"


def confusion_frame(cm: ConfusionMatrix, class_names: Sequence[str]) -> pd.DataFrame:
    """Label the matrix rows (true) and columns (predicted) with class names."""
    if len(class_names) != cm.n_classes:
        msg = f"expected {cm.n_classes} class names, got {len(class_names)}"
        raise MetricsError(msg)
    frame = pd.DataFrame(cm.counts, index=list(class_names), columns=list(class_names))
    frame.index.name = CONFUSION_CORNER_LABEL
    return frame


def write_confusion_csv(cm: ConfusionMatrix, class_names: Sequence[str], path: Path) -> Path:
    """Atomically write `cm` as a labelled CSV grid.

    Args:
        cm: Confusion matrix.
        class_names: Display name per class id.
        path: Destination file.

    Returns:
        The written path.
    """
    write_text_atomic(path, confusion_frame(cm, class_names).to_csv(lineterminator="\n"))
    return path
