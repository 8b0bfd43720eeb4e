// Copyright 2026 The SAE Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sae/algebra/config.hpp"

#include <string>

#include "sae/errors.hpp"

namespace sae {

void ProtocolConfig::validate() const {
  if (n != 2 * f + 1) {
    throw Error(Errc::kInvalidConfig,
                "n must equal 2f+1 (n=" + std::to_string(n) + ", f=" + std::to_string(f) + ")");
  }
  if (f < 1) throw Error(Errc::kInvalidConfig, "f must be at least 1");
  if (l < 1) throw Error(Errc::kInvalidConfig, "l must be at least 1");
  if (!toy && lambda != 128) throw Error(Errc::kInvalidConfig, "real mode supports lambda=128 only");
}

ProtocolConfig ProtocolConfig::for_escrows(uint32_t n, uint32_t l) {
  ProtocolConfig cfg;
  cfg.n = n;
  cfg.f = (n - 1) / 2;
  cfg.l = l;
  cfg.validate();
  return cfg;
}

}  // namespace sae
