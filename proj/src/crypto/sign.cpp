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

#include "sae/crypto/sign.hpp"

#include "sae/algebra/hash.hpp"
#include "sae/errors.hpp"

namespace sae::crypto {

namespace {

constexpr std::string_view kTagChallenge = "SAE-v1-sig";
constexpr std::string_view kTagNonce = "SAE-v1-sig-nonce";

Scalar challenge(const G1& r, const G1& pk, ByteView msg) {
  ByteWriter w;
  w.bytes(r.to_bytes()).bytes(pk.to_bytes()).bytes(msg);
  return hash_to_scalar(kTagChallenge, w.view());
}

}  // namespace

Bytes Signature::encode() const {
  ByteWriter w;
  w.raw(r.to_bytes()).raw(s.to_bytes());
  return w.take();
}

Signature Signature::decode(ByteView b) {
  const Field& f = Field::bls12_381();
  if (b.size() != G1::kBytes + f.byte_len()) throw Error(Errc::kDecode, "bad signature length");
  return Signature{G1::from_bytes(b.subspan(0, G1::kBytes)), f.from_bytes(b.subspan(G1::kBytes))};
}

KeyPair KeyPair::generate(Rng& rng) {
  Scalar sk = Field::bls12_381().random(rng);
  while (sk.is_zero()) sk = Field::bls12_381().random(rng);
  return from_secret(sk);
}

KeyPair KeyPair::from_secret(const Scalar& sk) { return KeyPair{sk, G1::generator().pow(sk)}; }

Signature sign(const KeyPair& key, ByteView msg, Rng& rng) {
  // Nonce from the secret, the message and fresh randomness: a weak rng
  // alone cannot leak the key.
  ByteWriter w;
  w.bytes(key.sk.to_bytes()).bytes(msg).bytes(rng.bytes(32));
  Scalar k = hash_to_scalar(kTagNonce, w.view());
  G1 r = G1::generator().pow(k);
  return Signature{r, k + challenge(r, key.pk, msg) * key.sk};
}

bool verify(const G1& pk, ByteView msg, const Signature& sig) {
  if (pk.is_identity() || sig.r.is_identity()) return false;
  return G1::generator().pow(sig.s) == sig.r * pk.pow(challenge(sig.r, pk, msg));
}

bool verify_encoded(ByteView pk, ByteView msg, ByteView sig) {
  try {
    return verify(G1::from_bytes(pk), msg, Signature::decode(sig));
  } catch (const Error&) {
    return false;
  }
}

}  // namespace sae::crypto
