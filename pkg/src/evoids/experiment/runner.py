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

"""Before/after feature-selection experiment grid.

Each dataset is prepared once (ingest, clean, downsample, split) and every
(model, feature-selection flag) cell reuses that split. Cells run in a thread
pool; results are collected in grid order so reports do not depend on the
thread count. A failing stage turns into an error record for the affected
cells instead of aborting the run.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime
from typing import TYPE_CHECKING

from evoids.classifiers import fit
from evoids.compat import UTC
from evoids.core.model_types import LogComponent, RecordStatus
from evoids.logging import structured_extra
from evoids.metrics import evaluate_with_matrix
from evoids.selection import select_features
from evoids.services.pipeline import PreparedData, prepare_dataset

from .config import ExperimentConfig, config_digest
from .report import ErrorEntry, ExperimentRecord, ExperimentReport, write_report

if TYPE_CHECKING:
    from pathlib import Path

    from evoids.classifiers import ClassifierSpec

    from .config import DatasetEntryModel

logger: logging.Logger = logging.getLogger("evoids.experiment")

__all__ = ["GridCell", "grid_cells", "run_and_write", "run_cell", "run_experiment"]


@dataclass(frozen=True, slots=True)
class GridCell:
    """One (dataset, model, feature-selection flag) combination."""

    dataset: str
    model: str
    fs_applied: bool
    spec: ClassifierSpec


def grid_cells(config: ExperimentConfig) -> list[GridCell]:
    """Cells in report order: dataset, then model, then baseline before feature selection."""
    return [
        GridCell(entry.name, model, fs_applied, spec)
        for entry in config.datasets
        for model, spec in config.models.items()
        for fs_applied in config.grid.arms()
    ]


def _error_entry(exc: BaseException) -> ErrorEntry:
    from evoids.error_codes import error_code_for  # noqa: PLC0415

    return ErrorEntry(type=type(exc).__name__, code=error_code_for(exc), message=str(exc))


def _failed_record(cell: GridCell, config: ExperimentConfig, digest: str, exc: BaseException) -> ExperimentRecord:
    return ExperimentRecord(
        dataset=cell.dataset,
        model=cell.model,
        fs_applied=cell.fs_applied,
        status=RecordStatus.ERROR,
        seed=config.seed,
        config_digest=digest,
        error=_error_entry(exc),
    )


def run_cell(cell: GridCell, prepared: PreparedData, config: ExperimentConfig, *, digest: str) -> ExperimentRecord:
    """Train and evaluate one cell on the shared split.

    With feature selection the optimizer searches masks on the training part
    only; the model is then retrained on the masked training rows and scored on
    the masked test rows.
    """
    started = time.perf_counter()
    train, test = prepared.split.train, prepared.split.test
    fs_cost: float | None = None
    if cell.fs_applied:
        result = select_features(
            train,
            cell.spec,
            config.weights.to_runtime(),
            config.evo_config(),
            validation=config.fs.to_runtime(),
            inner_seed=config.fs.inner_seed,
            averaging=config.averaging,
        )
        train, test = train.select(result.mask.bits), test.select(result.mask.bits)
        fs_cost = result.cost
    model = fit(cell.spec, train.features, train.labels, train.n_classes, seed=config.seed)
    metrics, matrix = evaluate_with_matrix(model, test.features, test.labels, averaging=config.averaging)
    logger.info(
        "Cell %s/%s/%s accuracy %.4f with %d features",
        cell.dataset,
        cell.model,
        "fs" if cell.fs_applied else "base",
        metrics.accuracy,
        train.n_features,
        extra=structured_extra(
            component=LogComponent.EXPERIMENT,
            dataset=cell.dataset,
            model=cell.model,
            fs_applied=cell.fs_applied,
            seed=config.seed,
            duration_ms=(time.perf_counter() - started) * 1000.0,
        ),
    )
    return ExperimentRecord(
        dataset=cell.dataset,
        model=cell.model,
        fs_applied=cell.fs_applied,
        selected_feature_count=train.n_features,
        selected_features=list(train.feature_names),
        confusion_matrix=matrix.to_lists(),
        class_names=list(train.class_names),
        metrics=metrics,
        train_time=model.train_time,
        test_time=metrics.test_time,
        seed=config.seed,
        config_digest=digest,
        fs_cost=fs_cost,
    )


def _prepare(entry: DatasetEntryModel, config: ExperimentConfig, threads: int) -> PreparedData:
    return prepare_dataset(
        entry.paths,
        entry.kind,
        name=entry.name,
        n_per_label=config.n_per_label,
        ratio=config.split.ratio,
        seed=config.split_seed,
        options=config.preprocess_options(),
        strict_scaling=config.strict_scaling,
        workers=threads,
    )


def _guarded_cell(
    cell: GridCell,
    prepared: PreparedData | BaseException,
    config: ExperimentConfig,
    digest: str,
) -> ExperimentRecord:
    if isinstance(prepared, BaseException):
        return _failed_record(cell, config, digest, prepared)
    try:
        return run_cell(cell, prepared, config, digest=digest)
    except Exception as exc:
        logger.warning(
            "Cell %s/%s/%s failed: %s",
            cell.dataset,
            cell.model,
            "fs" if cell.fs_applied else "base",
            exc,
            extra=structured_extra(
                component=LogComponent.EXPERIMENT,
                dataset=cell.dataset,
                model=cell.model,
                fs_applied=cell.fs_applied,
                details={"error": type(exc).__name__},
            ),
        )
        return _failed_record(cell, config, digest, exc)


def run_experiment(
    config: ExperimentConfig,
    *,
    threads: int = 1,
    generated_at: str | None = None,
) -> ExperimentReport:
    """Run every grid cell of `config`.

    Args:
        config: Validated experiment configuration.
        threads: Cells evaluated concurrently.
        generated_at: Timestamp to stamp on the report; defaults to now (UTC).

    Returns:
        The report with one record per cell, in grid order.
    """
    from evoids import __version__  # noqa: PLC0415

    started = time.perf_counter()
    digest = config_digest(config)
    prepared: dict[str, PreparedData | BaseException] = {}
    for entry in config.datasets:
        try:
            prepared[entry.name] = _prepare(entry, config, threads)
        except Exception as exc:
            logger.warning(
                "Preparing %s failed: %s",
                entry.name,
                exc,
                extra=structured_extra(component=LogComponent.EXPERIMENT, dataset=entry.name),
            )
            prepared[entry.name] = exc
    cells = grid_cells(config)
    workers = max(1, threads)
    if workers == 1:
        records = [_guarded_cell(cell, prepared[cell.dataset], config, digest) for cell in cells]
    else:
        with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="evoids-cell") as pool:
            records = list(pool.map(lambda cell: _guarded_cell(cell, prepared[cell.dataset], config, digest), cells))
    report = ExperimentReport(
        tool_version=__version__,
        generated_at=generated_at or datetime.now(UTC).isoformat(timespec="seconds"),
        config_digest=digest,
        records=records,
    )
    failed = len(report.failures)
    logger.info(
        "Experiment finished: %d records, %d failed",
        len(records),
        failed,
        extra=structured_extra(
            component=LogComponent.EXPERIMENT,
            counts={"records": len(records), "failed": failed},
            duration_ms=(time.perf_counter() - started) * 1000.0,
        ),
    )
    return report


def run_and_write(
    config: ExperimentConfig,
    *,
    threads: int = 1,
    output_dir: Path | None = None,
) -> tuple[ExperimentReport, dict[str, Path]]:
    """Run the grid and write its outputs under `output_dir` (default: the configured directory)."""
    report = run_experiment(config, threads=threads)
    return report, write_report(report, output_dir or config.output_dir)

