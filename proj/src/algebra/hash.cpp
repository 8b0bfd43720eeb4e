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

#include "sae/algebra/hash.hpp"

#include <openssl/evp.h>

namespace sae {

Scalar hash_to_scalar(std::string_view tag, ByteView input, const Field& field) {
  ByteWriter w;
  w.str(tag).raw(input);
  uint8_t digest[64];
  unsigned int len = 0;
  EVP_Digest(w.view().data(), w.view().size(), digest, &len, EVP_sha512(), nullptr);
  return field.reduce(ByteView(digest, len));
}

std::array<uint8_t, 32> sha256(ByteView data) {
  std::array<uint8_t, 32> out{};
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr);
  return out;
}

Transcript::Transcript(std::string_view label) { w_.str("SAE-v1-transcript").str(label); }

Transcript& Transcript::append(std::string_view label, ByteView data) {
  w_.str(label).bytes(data);
  return *this;
}

Transcript& Transcript::append_u64(std::string_view label, uint64_t v) {
  w_.str(label).u64(v);
  return *this;
}

Scalar Transcript::challenge(const Field& field) const {
  auto digest = sha256(w_.view());
  return field.reduce(ByteView(digest.data(), 16));
}

}  // namespace sae
