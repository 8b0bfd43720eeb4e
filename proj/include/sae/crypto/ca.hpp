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

#ifndef SAE_CRYPTO_CA_HPP_
#define SAE_CRYPTO_CA_HPP_

#include <string>

#include "sae/crypto/sign.hpp"

namespace sae::crypto {

// Binding of a real-world identity to a verification key, signed by the
// issuer.
struct Certificate {
  std::string identity;
  G1 key;
  Signature signature;

  Bytes signed_body() const;
  Bytes encode() const;
  static Certificate decode(ByteView b);
};

// Local stand-in for a PKI issuer.
class CertificateAuthority {
 public:
  explicit CertificateAuthority(KeyPair key) : key_(std::move(key)) {}
  static CertificateAuthority generate(Rng& rng) { return CertificateAuthority(KeyPair::generate(rng)); }

  Certificate issue(const std::string& identity, const G1& key, Rng& rng) const;
  const G1& public_key() const { return key_.pk; }
  const KeyPair& key() const { return key_; }

 private:
  KeyPair key_;
};

bool verify_certificate(const G1& ca_pk, const Certificate& cert);

}  // namespace sae::crypto

#endif  // SAE_CRYPTO_CA_HPP_
