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

#ifndef SAE_CRYPTO_AEAD_HPP_
#define SAE_CRYPTO_AEAD_HPP_

#include <array>
#include <string_view>

#include "sae/algebra/bytes.hpp"
#include "sae/algebra/field.hpp"
#include "sae/algebra/groups.hpp"
#include "sae/algebra/rng.hpp"

namespace sae::crypto {

using AeadKey = std::array<uint8_t, 32>;

inline constexpr size_t kNonceBytes = 12;
inline constexpr size_t kTagBytes = 16;

// HKDF-SHA256.
Bytes hkdf(ByteView ikm, std::string_view info, size_t len, ByteView salt = {});

// The symmetric key of an allegation is derived from a field element so it
// can be secret-shared like any other scalar.
AeadKey key_from_scalar(const Scalar& k);

// AES-256-GCM. Output is nonce || ciphertext || tag.
Bytes aead_seal(const AeadKey& key, ByteView plaintext, ByteView aad, Rng& rng);
// Same with an explicit nonce, for framed streams with counters.
Bytes aead_seal_with_nonce(const AeadKey& key, ByteView nonce, ByteView plaintext, ByteView aad);
// Throws kDecryptFailure.
Bytes aead_open(const AeadKey& key, ByteView sealed, ByteView aad);

// Hashed ElGamal over G1: E = g^e, key = HKDF(E || pk^e), AEAD under that key.
Bytes ecies_seal(const G1& recipient, ByteView plaintext, ByteView aad, Rng& rng);
// Throws kDecryptFailure.
Bytes ecies_open(const Scalar& sk, ByteView sealed, ByteView aad);
// The ephemeral E of a sealed box; throws kDecryptFailure.
G1 ecies_ephemeral(ByteView sealed);
// Opens with a disclosed shared point pk^e = E^sk, so third parties can check
// a recipient's claim that a box is malformed.
Bytes ecies_open_shared(const G1& shared, ByteView sealed, ByteView aad);

}  // namespace sae::crypto

#endif  // SAE_CRYPTO_AEAD_HPP_
