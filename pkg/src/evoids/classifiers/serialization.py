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

"""JSON persistence for trained models.

A model file is one JSON object::

    {"format": "evoids-model", "version": 1, "kind": "rf", "spec": {...},
     "n_features": 12, "n_classes": 2, "train_time": 0.41, "state": {...}}

Floats are written with Python's shortest round-trip repr, so a reloaded
model predicts exactly like the one that was saved.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Final

from evoids.core.model_types import ClassifierKind
from evoids.json import canonical_dumps
from evoids.runtime import write_text_atomic

from .base import ModelFormatError, TrainedModel
from .forest import ForestModel
from .knn import KnnModel
from .specs import ClassifierSpecError, parse_classifier_spec
from .svm import SvmModel
from .tree import TreeModel

if TYPE_CHECKING:
    from pathlib import Path

    from .specs import ClassifierSpec

__all__ = [
    "MODEL_FORMAT",
    "MODEL_FORMAT_VERSION",
    "ModelBundle",
    "bundle_from_payload",
    "bundle_to_payload",
    "load_model",
    "save_model",
]

MODEL_FORMAT: Final[str] = "evoids-model"
MODEL_FORMAT_VERSION: Final[int] = 1

_MODEL_TYPES: Final[dict[ClassifierKind, type[TrainedModel]]] = {
    ClassifierKind.KNN: KnnModel,
    ClassifierKind.CART: TreeModel,
    ClassifierKind.RF: ForestModel,
    ClassifierKind.SVM: SvmModel,
}


@dataclass(frozen=True, slots=True)
class ModelBundle:
    """A trained model together with the spec that produced it."""

    spec: ClassifierSpec
    model: TrainedModel


def bundle_to_payload(bundle: ModelBundle) -> dict[str, Any]:
    """Return the JSON document for `bundle`."""
    model = bundle.model
    return {
        "format": MODEL_FORMAT,
        "version": MODEL_FORMAT_VERSION,
        "kind": model.kind.value,
        "spec": bundle.spec.model_dump(mode="json"),
        "n_features": model.n_features,
        "n_classes": model.n_classes,
        "train_time": model.train_time,
        "state": model.state(),
    }


def bundle_from_payload(payload: object, *, source: str = "<payload>") -> ModelBundle:
    """Decode a model document.

    Raises:
        ModelFormatError: If the document is not a supported evoids model.
    """
    if not isinstance(payload, dict) or payload.get("format") != MODEL_FORMAT:
        raise ModelFormatError(source, f"not an {MODEL_FORMAT} document")
    version = payload.get("version")
    if version != MODEL_FORMAT_VERSION:
        raise ModelFormatError(source, f"unsupported version {version!r} (expected {MODEL_FORMAT_VERSION})")
    try:
        kind = ClassifierKind.from_str(str(payload["kind"]))
        spec = parse_classifier_spec(payload["spec"])
        if spec.kind != kind:
            raise ModelFormatError(source, f"spec kind {spec.kind} does not match model kind {kind}")
        model = _MODEL_TYPES[kind].from_state(
            payload["state"],
            n_features=int(payload["n_features"]),
            n_classes=int(payload["n_classes"]),
            train_time=float(payload["train_time"]),
        )
    except ModelFormatError:
        raise
    except ClassifierSpecError as exc:
        raise ModelFormatError(source, exc.reason) from exc
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFormatError(source, f"malformed model state ({exc})") from exc
    return ModelBundle(spec=spec, model=model)


def save_model(model: TrainedModel, spec: ClassifierSpec, path: Path) -> Path:
    """Write `model` and `spec` to `path` atomically."""
    write_text_atomic(path, canonical_dumps(bundle_to_payload(ModelBundle(spec=spec, model=model))) + "\n")
    return path


def load_model(path: Path) -> ModelBundle:
    """Read a model file written by `save_model`.

    Raises:
        ModelFormatError: If the file is missing, not JSON, or not a supported model.
    """
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ModelFormatError(str(path), str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise ModelFormatError(str(path), f"invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    return bundle_from_payload(payload, source=str(path))
