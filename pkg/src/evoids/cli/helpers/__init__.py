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

"""Shared helper utilities for the evoids CLI."""

from __future__ import annotations

from .args import (
    ArgumentRegistrar,
    parse_comma_separated,
    parse_key_value_entries,
    parse_n_per_label,
    parse_weights,
    register_argument,
)
from .io import echo
from .options import (
    averaging_from_args,
    classifier_from_args,
    evo_config_from_args,
    register_model_arguments,
    register_search_arguments,
    register_split_arguments,
    settings_from_args,
    split_from_args,
    validation_from_args,
    weights_from_args,
)

__all__ = [
    "ArgumentRegistrar",
    "averaging_from_args",
    "classifier_from_args",
    "echo",
    "evo_config_from_args",
    "parse_comma_separated",
    "parse_key_value_entries",
    "parse_n_per_label",
    "parse_weights",
    "register_argument",
    "register_model_arguments",
    "register_search_arguments",
    "register_split_arguments",
    "settings_from_args",
    "split_from_args",
    "validation_from_args",
    "weights_from_args",
]
