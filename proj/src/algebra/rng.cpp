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

#include "sae/algebra/rng.hpp"

#include <openssl/rand.h>

#include <algorithm>
#include <cstring>

#include "sae/algebra/hash.hpp"
#include "sae/errors.hpp"

namespace sae {

Rng::Rng(ByteView seed) {
  ByteWriter w;
  w.str("sae/rng/seed").raw(seed);
  key_ = sha256(w.view());
}

Rng Rng::from_u64(uint64_t seed) {
  ByteWriter w;
  w.u64(seed);
  return Rng(w.view());
}

Rng Rng::from_os() {
  std::array<uint8_t, 32> seed{};
  if (RAND_bytes(seed.data(), static_cast<int>(seed.size())) != 1) {
    throw Error(Errc::kIo, "RAND_bytes failed");
  }
  return Rng(seed);
}

void Rng::refill() {
  uint8_t buf[40];
  std::memcpy(buf, key_.data(), 32);
  for (int i = 0; i < 8; ++i) buf[32 + i] = static_cast<uint8_t>(counter_ >> (56 - 8 * i));
  ++counter_;
  block_ = sha256(ByteView(buf, sizeof(buf)));
  used_ = 0;
}

void Rng::fill(std::span<uint8_t> out) {
  size_t pos = 0;
  while (pos < out.size()) {
    if (used_ == block_.size()) refill();
    size_t take = std::min(out.size() - pos, block_.size() - used_);
    std::memcpy(out.data() + pos, block_.data() + used_, take);
    used_ += take;
    pos += take;
  }
}

Bytes Rng::bytes(size_t n) {
  Bytes out(n);
  fill(out);
  return out;
}

uint64_t Rng::next_u64() {
  uint8_t b[8];
  fill(b);
  uint64_t v = 0;
  for (uint8_t x : b) v = (v << 8) | x;
  return v;
}

uint64_t Rng::uniform(uint64_t bound) {
  if (bound == 0) throw Error(Errc::kInvalidConfig, "uniform bound must be positive");
  const uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  for (;;) {
    uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

Rng Rng::fork(std::string_view label) const {
  ByteWriter w;
  w.raw(key_).u64(counter_).str(label);
  return Rng(w.view());
}

}  // namespace sae
