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


"""Fixtures and configuration for property-based tests."""

from __future__ import annotations

import os

from hypothesis import HealthCheck, settings

settings.register_profile("evoids", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("evoids-ci", parent=settings.get_profile("evoids"), max_examples=200, derandomize=True)
settings.load_profile(os.environ.get("EVOIDS_HYPOTHESIS_PROFILE", "evoids"))
