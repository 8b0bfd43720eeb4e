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

#ifndef SAE_CRYPTO_SIGN_HPP_
#define SAE_CRYPTO_SIGN_HPP_

#include "sae/algebra/bytes.hpp"
#include "sae/algebra/field.hpp"
#include "sae/algebra/groups.hpp"
#include "sae/algebra/rng.hpp"

namespace sae::crypto {

// Schnorr signatures over G1. With the (R, s) encoding and a challenge that
// binds R and the public key, a second valid signature on the same message
// cannot be derived from a first.
struct Signature {
  G1 r;
  Scalar s;

  Bytes encode() const;
  static Signature decode(ByteView b);
  bool operator==(const Signature&) const = default;
};

struct KeyPair {
  Scalar sk;
  G1 pk;

  static KeyPair generate(Rng& rng);
  static KeyPair from_secret(const Scalar& sk);
};

Signature sign(const KeyPair& key, ByteView msg, Rng& rng);
bool verify(const G1& pk, ByteView msg, const Signature& sig);
// Decodes and verifies; false on malformed input.
bool verify_encoded(ByteView pk, ByteView msg, ByteView sig);

}  // namespace sae::crypto

#endif  // SAE_CRYPTO_SIGN_HPP_
