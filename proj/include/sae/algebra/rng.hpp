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

#ifndef SAE_ALGEBRA_RNG_HPP_
#define SAE_ALGEBRA_RNG_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "sae/algebra/bytes.hpp"

namespace sae {

// Hash-counter DRBG (SHA-256 over key || counter). Seeded instances are fully
// reproducible, which the simulated harness relies on; `from_os()` draws the
// key from the OpenSSL entropy pool. Not thread-safe: one instance per party.
class Rng {
 public:
  explicit Rng(ByteView seed);
  static Rng from_u64(uint64_t seed);
  static Rng from_os();

  void fill(std::span<uint8_t> out);
  Bytes bytes(size_t n);
  uint64_t next_u64();
  // Uniform in [0, bound); bound > 0.
  uint64_t uniform(uint64_t bound);
  // Independent child stream; same parent state + label gives the same child.
  Rng fork(std::string_view label) const;

 private:
  void refill();

  std::array<uint8_t, 32> key_{};
  uint64_t counter_ = 0;
  std::array<uint8_t, 32> block_{};
  size_t used_ = 32;
};

}  // namespace sae

#endif  // SAE_ALGEBRA_RNG_HPP_
