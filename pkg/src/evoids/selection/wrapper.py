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

"""Wrapper feature selection driven by the Energy Valley Optimizer.

Particles live in ``[0, 1]^d``; each position is thresholded into a feature
mask and scored with the weighted cost on fixed fitness partitions of the
training rows. Masks recur often once positions are thresholded, so costs
are memoised by bit pattern for the whole run.
"""

from __future__ import annotations

import json
import logging
import threading
import time
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, ClassVar, Final, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from evoids.core.model_types import Averaging, LogComponent
from evoids.exceptions import EvoidsDataError
from evoids.logging import structured_extra
from evoids.metrics import Metrics
from evoids.optimizer import Bounds, optimize
from evoids.runtime import write_text_atomic
from evoids.seeding import derive_seed, tag

from .cost import CostWeights, FsValidation, fitness_partitions, score_mask
from .mask import FeatureMask, binarize

if TYPE_CHECKING:
    from pathlib import Path

    from evoids.classifiers import ClassifierSpec
    from evoids.core.type_aliases import FloatArray
    from evoids.data.models import Dataset
    from evoids.optimizer import EvoConfig, OptResult

    from .cost import Partition

logger: logging.Logger = logging.getLogger("evoids.selection")

__all__ = [
    "FS_RESULT_FORMAT",
    "FeatureSelector",
    "FsDocument",
    "FsResult",
    "FsResultFormatError",
    "MaskCacheStats",
    "default_inner_seed",
    "load_fs_result",
    "select_features",
    "write_fs_result",
]

FS_RESULT_FORMAT: Final[str] = "evoids-fs-result"
FS_RESULT_VERSION: Final[int] = 1


class FsResultFormatError(EvoidsDataError):
    """Raised when a feature-selection result file cannot be read."""

    def __init__(self, path: Path, reason: str) -> None:
        """Initialise the error with the file and the decoding problem."""
        self.path = path
        self.reason = reason
        super().__init__(f"Cannot read feature-selection result {path}: {reason}")


@dataclass(frozen=True, slots=True)
class MaskCacheStats:
    """Memo counters for one selection run."""

    hits: int
    misses: int
    size: int


def default_inner_seed(seed: int) -> int:
    """Seed of the fitness partitions when none is given, derived apart from the optimizer streams."""
    return derive_seed(seed, tag("fitness-split"))


class FeatureSelector:
    """Scores feature masks for one training set, classifier and weighting.

    The fitness partitions are drawn once at construction so every mask is
    judged on the same rows. `evaluate` is safe to call from several threads;
    concurrent misses on the same mask compute the same value and the last
    insert wins.
    """

    def __init__(  # noqa: PLR0913
        self,
        train: Dataset,
        spec: ClassifierSpec,
        weights: CostWeights,
        *,
        inner_seed: int,
        validation: FsValidation | None = None,
        averaging: Averaging = Averaging.MACRO,
    ) -> None:
        self.train = train
        self.spec = spec
        self.weights = weights
        self.inner_seed = inner_seed
        self.validation = validation or FsValidation()
        self.averaging = averaging
        self._partitions: list[Partition] = fitness_partitions(train, self.validation, inner_seed)
        self._memo: dict[bytes, tuple[float, Metrics]] = {}
        self._lock = threading.Lock()
        self._hits = 0
        self._misses = 0

    @property
    def n_features(self) -> int:
        return self.train.n_features

    def cache_stats(self) -> MaskCacheStats:
        with self._lock:
            return MaskCacheStats(hits=self._hits, misses=self._misses, size=len(self._memo))

    def evaluate(self, mask: FeatureMask) -> tuple[float, Metrics]:
        """Return the cost of `mask` and the metrics it was computed from."""
        key = mask.key
        with self._lock:
            cached = self._memo.get(key)
            if cached is not None:
                self._hits += 1
                return cached
            self._misses += 1
        metrics = score_mask(
            mask,
            self.train,
            self.spec,
            self._partitions,
            seed=self.inner_seed,
            averaging=self.averaging,
        )
        entry = (self.weights.cost(metrics, mask.count, mask.size), metrics)
        with self._lock:
            self._memo[key] = entry
        return entry

    def objective(self, position: FloatArray) -> float:
        """Optimizer objective: the cost of the thresholded position."""
        cost, _ = self.evaluate(binarize(position))
        return cost


class FsDocument(BaseModel):
    """On-disk form of a feature-selection result."""

    model_config: ClassVar[ConfigDict] = ConfigDict(frozen=True, extra="forbid")

    format: Literal["evoids-fs-result"] = "evoids-fs-result"
    version: Literal[1] = 1
    mask: list[int]
    selected_names: list[str]
    feature_names: list[str]
    cost: float
    weights: dict[str, float]
    seed: int
    inner_seed: int
    evaluations_used: int = Field(ge=0)
    generations: int = Field(ge=0)
    history: list[float]
    validation: dict[str, Any]
    classifier: dict[str, Any]
    cache: dict[str, int]
    inner_metrics: Metrics

    def feature_mask(self) -> FeatureMask:
        return FeatureMask([bool(bit) for bit in self.mask])


@dataclass(frozen=True, slots=True)
class FsResult:
    """Outcome of `select_features`.

    Attributes:
        mask: Best mask found.
        cost: Its weighted cost.
        inner_metrics: Fitness metrics behind `cost`.
        opt: Raw optimizer result.
        selected_names: Names of the selected features, in column order.
        feature_names: Every feature name of the training set.
        weights: Cost weights used.
        validation: Fitness protocol used.
        inner_seed: Seed of the fitness partitions.
        spec: Classifier used as the wrapper.
        cache: Memo counters at the end of the run.
    """

    mask: FeatureMask
    cost: float
    inner_metrics: Metrics
    opt: OptResult
    selected_names: tuple[str, ...]
    feature_names: tuple[str, ...]
    weights: CostWeights
    validation: FsValidation
    inner_seed: int
    spec: ClassifierSpec
    cache: MaskCacheStats

    def to_document(self) -> FsDocument:
        return FsDocument(
            mask=self.mask.to_list(),
            selected_names=list(self.selected_names),
            feature_names=list(self.feature_names),
            cost=self.cost,
            weights={"w1": self.weights.w1, "w2": self.weights.w2, "w3": self.weights.w3, "w4": self.weights.w4},
            seed=self.opt.seed,
            inner_seed=self.inner_seed,
            evaluations_used=self.opt.evaluations_used,
            generations=self.opt.generations,
            history=list(self.opt.history),
            validation={
                "protocol": self.validation.protocol.value,
                "holdout_ratio": self.validation.holdout_ratio,
                "folds": self.validation.folds,
            },
            classifier=self.spec.model_dump(mode="json"),
            cache={"hits": self.cache.hits, "misses": self.cache.misses},
            inner_metrics=self.inner_metrics,
        )

    def to_payload(self) -> dict[str, Any]:
        return self.to_document().model_dump(mode="json")


def select_features(  # noqa: PLR0913
    train: Dataset,
    spec: ClassifierSpec,
    weights: CostWeights,
    config: EvoConfig,
    *,
    validation: FsValidation | None = None,
    inner_seed: int | None = None,
    averaging: Averaging = Averaging.MACRO,
    workers: int = 1,
) -> FsResult:
    """Search for the feature mask with the lowest weighted cost.

    Args:
        train: Preprocessed training set with at least two classes.
        spec: Wrapper classifier.
        weights: Cost weights.
        config: Optimizer settings; `config.seed` drives the search.
        validation: Fitness protocol, holdout by default.
        inner_seed: Seed of the fitness partitions; derived from `config.seed`
            when omitted.
        averaging: Aggregate mode for the FPR/FNR terms.
        workers: Threads evaluating candidate masks.

    Returns:
        The best mask with its cost, metrics and the optimizer record.
    """
    started = time.perf_counter()
    resolved_seed = default_inner_seed(config.seed) if inner_seed is None else inner_seed
    selector = FeatureSelector(
        train,
        spec,
        weights,
        inner_seed=resolved_seed,
        validation=validation,
        averaging=averaging,
    )
    bounds = Bounds.uniform(train.n_features, 0.0, 1.0)
    opt = optimize(selector.objective, bounds, config, workers=workers)
    mask = binarize(opt.best_position)
    cost, metrics = selector.evaluate(mask)
    stats = selector.cache_stats()
    logger.info(
        "Selected %d of %d features (cost %.6g)",
        mask.count,
        mask.size,
        cost,
        extra=structured_extra(
            component=LogComponent.SELECTION,
            model=str(spec.kind),
            seed=config.seed,
            evaluations=opt.evaluations_used,
            best_nel=cost,
            duration_ms=(time.perf_counter() - started) * 1000.0,
            counts={"selected": mask.count, "features": mask.size, "cache_hits": stats.hits},
        ),
    )
    return FsResult(
        mask=mask,
        cost=cost,
        inner_metrics=metrics,
        opt=opt,
        selected_names=tuple(mask.names(train.feature_names)),
        feature_names=tuple(train.feature_names),
        weights=weights,
        validation=selector.validation,
        inner_seed=resolved_seed,
        spec=spec,
        cache=stats,
    )


def write_fs_result(result: FsResult, path: Path) -> Path:
    """Atomically write `result` as JSON."""
    write_text_atomic(path, result.to_document().model_dump_json(indent=2) + "\n")
    return path


def load_fs_result(path: Path) -> FsDocument:
    """Read a result written by `write_fs_result`.

    Raises:
        FsResultFormatError: If the file is missing, not JSON, or fails validation.
    """
    try:
        return FsDocument.model_validate(json.loads(path.read_text(encoding="utf-8")))
    except OSError as exc:
        raise FsResultFormatError(path, str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise FsResultFormatError(path, f"invalid JSON ({exc.msg})") from exc
    except ValidationError as exc:
        raise FsResultFormatError(path, f"{exc.error_count()} invalid field(s)") from exc
