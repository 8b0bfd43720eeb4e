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

#ifndef SAE_ALGEBRA_HASH_HPP_
#define SAE_ALGEBRA_HASH_HPP_

#include <array>
#include <string_view>

#include "sae/algebra/bytes.hpp"
#include "sae/algebra/field.hpp"

namespace sae {

// Domain tags for the two protocol hash functions.
inline constexpr std::string_view kTagMeta = "SAE-v1-H1";    // meta-data -> scalar
inline constexpr std::string_view kTagPubKey = "SAE-v1-H2";  // one-time pk -> scalar

// SHA-512(len(tag) || tag || input) reduced mod q. 512 bits of output leave
// at most 2^-128 bias for moduli up to 384 bits.
Scalar hash_to_scalar(std::string_view tag, ByteView input,
                      const Field& field = Field::bls12_381());

std::array<uint8_t, 32> sha256(ByteView data);

// Fiat-Shamir transcript. Every absorbed item is length-prefixed.
class Transcript {
 public:
  explicit Transcript(std::string_view label);

  Transcript& append(std::string_view label, ByteView data);
  Transcript& append(std::string_view label, std::string_view data) {
    return append(label, as_bytes(data));
  }
  Transcript& append_u64(std::string_view label, uint64_t v);

  // 128-bit challenge, interpreted in `field` (reduced for toy fields).
  Scalar challenge(const Field& field) const;

 private:
  ByteWriter w_;
};

}  // namespace sae

#endif  // SAE_ALGEBRA_HASH_HPP_
