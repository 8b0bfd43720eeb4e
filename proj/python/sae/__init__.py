# Copyright 2026 The SAE Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Threshold-gated allegation escrow: bindings to the C++ core."""

from ._sae import (
    Cluster,
    SaeError,
    fuzz,
    oracle_reveal,
    reference_vrf,
    run_scenario,
    verify_vrf,
    vrf_public_key,
)

__all__ = [
    "Cluster",
    "SaeError",
    "fuzz",
    "oracle_reveal",
    "reference_vrf",
    "run_scenario",
    "verify_vrf",
    "vrf_public_key",
]
