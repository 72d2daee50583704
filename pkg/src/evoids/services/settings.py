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

"""Resolution of run settings shared by the CLI commands.

Command-line flags win over values from a configuration file, which win over
built-in defaults.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Final

from evoids.classifiers import DEFAULT_MODEL_NAMES, parse_classifier_spec, spec_from_params
from evoids.core.model_types import ClassifierKind
from evoids.exceptions import EvoidsUsageError
from evoids.experiment.config import DEFAULT_OUTPUT_DIR, ExperimentConfig, load_experiment_config

if TYPE_CHECKING:
    from collections.abc import Mapping

    from evoids.classifiers import ClassifierSpec

__all__ = ["RunSettings", "resolve_classifier", "resolve_settings"]

_REPORT_NAME_KINDS: Final[dict[str, ClassifierKind]] = {
    name.lower(): kind for kind, name in DEFAULT_MODEL_NAMES.items()
}


@dataclass(frozen=True, slots=True)
class RunSettings:
    """Global options after merging flags with the optional configuration file."""

    seed: int
    out: Path
    threads: int
    strict_scaling: bool
    config: ExperimentConfig | None = None


def resolve_settings(
    *,
    config_path: Path | None,
    seed: int | None,
    out: Path | None,
    threads: int | None,
    strict_scaling: bool,
) -> RunSettings:
    """Merge the global flags with the configuration file at `config_path`, if any."""
    config = load_experiment_config(config_path) if config_path is not None else None
    if threads is not None and threads < 1:
        msg = f"--threads must be >= 1 (got {threads})"
        raise EvoidsUsageError(msg)
    if config is not None and seed is not None and seed != config.seed:
        config = config.model_copy(update={"seed": seed})
    if config is not None and strict_scaling and not config.strict_scaling:
        config = config.model_copy(update={"strict_scaling": True})
    resolved_out = out or (config.output_dir if config is not None else Path(DEFAULT_OUTPUT_DIR))
    return RunSettings(
        seed=seed if seed is not None else (config.seed if config is not None else 0),
        out=resolved_out,
        threads=threads or 1,
        strict_scaling=strict_scaling or (config is not None and config.strict_scaling),
        config=config,
    )


def resolve_classifier(
    name: str,
    params: Mapping[str, str],
    config: ExperimentConfig | None = None,
) -> tuple[str, ClassifierSpec]:
    """Turn a ``--model`` value plus ``--param`` overrides into a report name and spec.

    `name` may be a model configured in `config`, a report name such as
    ``D_Tree``, or a classifier kind (``knn``, ``cart``, ``rf``, ``svm``).

    Raises:
        EvoidsUsageError: If `name` matches nothing.
    """
    if config is not None and name in config.models:
        base = config.models[name]
        if not params:
            return name, base
        merged = {**base.model_dump(mode="json", exclude_none=True), **dict(params)}
        return name, parse_classifier_spec(merged)
    key = name.strip().lower()
    kind = _REPORT_NAME_KINDS.get(key)
    if kind is None:
        try:
            kind = ClassifierKind.from_str(key)
        except ValueError as exc:
            choices = ", ".join(sorted({*DEFAULT_MODEL_NAMES.values(), *(k.value for k in ClassifierKind)}))
            msg = f"Unknown model '{name}' (choose from {choices})"
            raise EvoidsUsageError(msg) from exc
    return DEFAULT_MODEL_NAMES[kind], spec_from_params(kind, dict(params))
