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

"""Dataset preparation pipeline shared by the CLI commands and the experiment runner.

The stage order is ingest, clean (no scaling), downsample, then scale. In the
default mode the scaler is fit on the whole balanced dataset before the split.
With strict scaling the balanced dataset stays unscaled and the scaler is fit
on the training part only, then applied to the test part.
"""

from __future__ import annotations

import dataclasses
import logging
import time
from dataclasses import dataclass
from typing import TYPE_CHECKING, Literal

from evoids.core.model_types import LogComponent
from evoids.data import PreprocessOptions, downsample, ingest, preprocess, scale_dataset, split
from evoids.logging import structured_extra

if TYPE_CHECKING:
    from collections.abc import Sequence
    from pathlib import Path

    from evoids.core.model_types import DatasetKind
    from evoids.data import Dataset, MinMaxScaler, SplitPair

logger: logging.Logger = logging.getLogger("evoids.data")

__all__ = ["PreparedData", "balance_dataset", "prepare_dataset", "split_for_training"]


@dataclass(frozen=True, slots=True)
class PreparedData:
    """A balanced dataset and the split every experiment cell shares.

    Attributes:
        name: Dataset label used in reports.
        dataset: Balanced dataset; scaled unless `strict_scaling` is set.
        split: Scaled train/test partition.
        scaler: Scaler applied to `split`.
        strict_scaling: Whether the scaler was fit on the training part only.
    """

    name: str
    dataset: Dataset
    split: SplitPair
    scaler: MinMaxScaler
    strict_scaling: bool


def balance_dataset(  # noqa: PLR0913
    paths: Sequence[Path | str],
    kind: DatasetKind | str,
    *,
    n_per_label: int | Literal["auto"] | None = "auto",
    seed: int = 0,
    options: PreprocessOptions | None = None,
    scale: bool = True,
    workers: int = 1,
) -> tuple[Dataset, MinMaxScaler | None]:
    """Ingest, clean and downsample; scale the balanced result when `scale` is set."""
    cleaning = dataclasses.replace(options or PreprocessOptions(), scale=False)
    cleaned = preprocess(ingest(paths, kind, workers=workers), cleaning)
    balanced = downsample(cleaned, n_per_label, seed)
    if not scale:
        return balanced, None
    return scale_dataset(balanced)


def split_for_training(
    dataset: Dataset,
    ratio: float,
    seed: int,
    *,
    strict_scaling: bool = False,
) -> tuple[SplitPair, MinMaxScaler | None]:
    """Split `dataset`; with strict scaling fit a scaler on the train part and apply it to both.

    Returns:
        The split and, in strict mode, the train-fitted scaler.
    """
    pair = split(dataset, ratio, seed)
    if not strict_scaling:
        return pair, None
    train, scaler = scale_dataset(pair.train)
    test, _ = scale_dataset(pair.test, scaler)
    return dataclasses.replace(pair, train=train, test=test), scaler


def prepare_dataset(  # noqa: PLR0913
    paths: Sequence[Path | str],
    kind: DatasetKind | str,
    *,
    name: str,
    n_per_label: int | Literal["auto"] | None = "auto",
    ratio: float = 0.8,
    seed: int = 0,
    options: PreprocessOptions | None = None,
    strict_scaling: bool = False,
    workers: int = 1,
) -> PreparedData:
    """Run the full preparation pipeline for one dataset.

    Args:
        paths: CSV files of the dataset.
        kind: Expected column layout.
        name: Label used in logs and reports.
        n_per_label: Per-class cap, or ``"auto"`` for the minority count.
        ratio: Train share of the split.
        seed: Seed for downsampling and splitting.
        options: Cleaning options; scaling is always handled here.
        strict_scaling: Fit the scaler on the train part only.
        workers: Files parsed concurrently.

    Returns:
        The prepared dataset and its split.
    """
    started = time.perf_counter()
    dataset, scaler = balance_dataset(
        paths,
        kind,
        n_per_label=n_per_label,
        seed=seed,
        options=options,
        scale=not strict_scaling,
        workers=workers,
    )
    pair, strict_scaler = split_for_training(dataset, ratio, seed, strict_scaling=strict_scaling)
    fitted = strict_scaler if strict_scaler is not None else scaler
    if fitted is None:  # pragma: no cover - one of the two branches always fits a scaler
        msg = "no scaler was fitted"
        raise RuntimeError(msg)
    logger.info(
        "Prepared %s: %d train / %d test rows, %d features",
        name,
        pair.train.n_rows,
        pair.test.n_rows,
        dataset.n_features,
        extra=structured_extra(
            component=LogComponent.DATA,
            dataset=name,
            seed=seed,
            counts=dataset.class_counts(),
            duration_ms=(time.perf_counter() - started) * 1000.0,
        ),
    )
    return PreparedData(name=name, dataset=dataset, split=pair, scaler=fitted, strict_scaling=strict_scaling)
