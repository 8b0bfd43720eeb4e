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

#ifndef SAE_CRYPTO_KEYSTORE_HPP_
#define SAE_CRYPTO_KEYSTORE_HPP_

#include <string>
#include <string_view>

#include "sae/algebra/bytes.hpp"
#include "sae/algebra/rng.hpp"

namespace sae::crypto {

inline constexpr uint32_t kKeystoreIterations = 100000;

// Password-sealed blob: version || salt || iterations || AES-GCM(PBKDF2 key).
Bytes keystore_seal(ByteView secret, std::string_view password, Rng& rng,
                    uint32_t iterations = kKeystoreIterations);
// Throws kDecryptFailure on a wrong password or tampering.
Bytes keystore_open(ByteView sealed, std::string_view password);

void write_file(const std::string& path, ByteView data);
Bytes read_file(const std::string& path);

}  // namespace sae::crypto

#endif  // SAE_CRYPTO_KEYSTORE_HPP_
