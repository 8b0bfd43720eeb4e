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

#ifndef SAE_ALGEBRA_CONFIG_HPP_
#define SAE_ALGEBRA_CONFIG_HPP_

#include <cstdint>

namespace sae {

struct ProtocolConfig {
  uint32_t n = 3;        // escrow count
  uint32_t f = 1;        // corruption bound; n == 2f + 1
  uint32_t l = 10;       // one-time keys per identity per period
  uint32_t lambda = 128;
  bool toy = false;      // toy fields relax the lambda requirement

  // Throws kInvalidConfig.
  void validate() const;
  uint32_t threshold() const { return f + 1; }

  static ProtocolConfig for_escrows(uint32_t n, uint32_t l = 10);
};

}  // namespace sae

#endif  // SAE_ALGEBRA_CONFIG_HPP_
