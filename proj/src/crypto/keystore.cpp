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

#include "sae/crypto/keystore.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iterator>

#include "sae/crypto/aead.hpp"
#include "sae/errors.hpp"

namespace sae::crypto {

namespace {

constexpr uint8_t kVersion = 1;
constexpr size_t kSaltBytes = 16;

AeadKey derive(std::string_view password, ByteView salt, uint32_t iterations) {
  AeadKey key;
  if (PKCS5_PBKDF2_HMAC(password.data(), static_cast<int>(password.size()), salt.data(),
                        static_cast<int>(salt.size()), static_cast<int>(iterations), EVP_sha256(),
                        static_cast<int>(key.size()), key.data()) != 1) {
    throw Error(Errc::kIo, "PBKDF2 failed");
  }
  return key;
}

Bytes header(ByteView salt, uint32_t iterations) {
  ByteWriter w;
  w.u8(kVersion).raw(salt).u32(iterations);
  return w.take();
}

}  // namespace

Bytes keystore_seal(ByteView secret, std::string_view password, Rng& rng, uint32_t iterations) {
  if (iterations == 0) throw Error(Errc::kInvalidConfig, "iterations must be positive");
  Bytes salt = rng.bytes(kSaltBytes);
  Bytes out = header(salt, iterations);
  Bytes body = aead_seal(derive(password, salt, iterations), secret, out, rng);
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

Bytes keystore_open(ByteView sealed, std::string_view password) {
  Bytes salt;
  uint32_t iterations = 0;
  try {
    ByteReader r(sealed);
    if (r.u8() != kVersion) throw Error(Errc::kDecode, "unknown keystore version");
    ByteView s = r.raw(kSaltBytes);
    salt.assign(s.begin(), s.end());
    iterations = r.u32();
  } catch (const Error& e) {
    throw Error(Errc::kDecryptFailure, std::string("bad keystore: ") + e.what());
  }
  if (iterations == 0 || iterations > 10'000'000) throw Error(Errc::kDecryptFailure, "bad iteration count");
  size_t head = 1 + kSaltBytes + 4;
  return aead_open(derive(password, salt, iterations), sealed.subspan(head), sealed.subspan(0, head));
}

void write_file(const std::string& path, ByteView data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error(Errc::kIo, "cannot write " + path);
}

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIo, "cannot read " + path);
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace sae::crypto
