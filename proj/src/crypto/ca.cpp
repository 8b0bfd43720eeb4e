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

#include "sae/crypto/ca.hpp"

namespace sae::crypto {

Bytes Certificate::signed_body() const {
  ByteWriter w;
  w.str("SAE-v1-cert").str(identity).bytes(key.to_bytes());
  return w.take();
}

Bytes Certificate::encode() const {
  ByteWriter w;
  w.str(identity).bytes(key.to_bytes()).bytes(signature.encode());
  return w.take();
}

Certificate Certificate::decode(ByteView b) {
  ByteReader r(b);
  Certificate c;
  c.identity = r.str(4096);
  c.key = G1::from_bytes(r.bytes(G1::kBytes));
  c.signature = Signature::decode(r.bytes(256));
  r.expect_done();
  return c;
}

Certificate CertificateAuthority::issue(const std::string& identity, const G1& key, Rng& rng) const {
  Certificate c{identity, key, {}};
  c.signature = sign(key_, c.signed_body(), rng);
  return c;
}

bool verify_certificate(const G1& ca_pk, const Certificate& cert) {
  return !cert.key.is_identity() && verify(ca_pk, cert.signed_body(), cert.signature);
}

}  // namespace sae::crypto
