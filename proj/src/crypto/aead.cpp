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

#include "sae/crypto/aead.hpp"

#include <openssl/evp.h>
#include <openssl/kdf.h>

#include <memory>

#include "sae/errors.hpp"

namespace sae::crypto {

namespace {

struct CipherCtxFree {
  void operator()(EVP_CIPHER_CTX* c) const { EVP_CIPHER_CTX_free(c); }
};
struct PkeyCtxFree {
  void operator()(EVP_PKEY_CTX* c) const { EVP_PKEY_CTX_free(c); }
};

int len_int(size_t n) {
  if (n > (1u << 30)) throw Error(Errc::kInvalidConfig, "buffer too large");
  return static_cast<int>(n);
}

AeadKey to_key(const Bytes& b) {
  AeadKey k;
  std::copy(b.begin(), b.end(), k.begin());
  return k;
}

}  // namespace

Bytes hkdf(ByteView ikm, std::string_view info, size_t len, ByteView salt) {
  std::unique_ptr<EVP_PKEY_CTX, PkeyCtxFree> ctx(EVP_PKEY_CTX_new_id(EVP_PKEY_HKDF, nullptr));
  Bytes out(len);
  size_t out_len = len;
  if (!ctx || EVP_PKEY_derive_init(ctx.get()) <= 0 ||
      EVP_PKEY_CTX_set_hkdf_md(ctx.get(), EVP_sha256()) <= 0 ||
      EVP_PKEY_CTX_set1_hkdf_salt(ctx.get(), salt.data(), len_int(salt.size())) <= 0 ||
      EVP_PKEY_CTX_set1_hkdf_key(ctx.get(), ikm.data(), len_int(ikm.size())) <= 0 ||
      EVP_PKEY_CTX_add1_hkdf_info(ctx.get(), reinterpret_cast<const unsigned char*>(info.data()),
                                  len_int(info.size())) <= 0 ||
      EVP_PKEY_derive(ctx.get(), out.data(), &out_len) <= 0 || out_len != len) {
    throw Error(Errc::kIo, "HKDF failed");
  }
  return out;
}

AeadKey key_from_scalar(const Scalar& k) { return to_key(hkdf(k.to_bytes(), "SAE-v1-allegation-key", 32)); }

Bytes aead_seal_with_nonce(const AeadKey& key, ByteView nonce, ByteView plaintext, ByteView aad) {
  if (nonce.size() != kNonceBytes) throw Error(Errc::kInvalidConfig, "bad nonce length");
  std::unique_ptr<EVP_CIPHER_CTX, CipherCtxFree> ctx(EVP_CIPHER_CTX_new());
  Bytes out(kNonceBytes + plaintext.size() + kTagBytes);
  std::copy(nonce.begin(), nonce.end(), out.begin());
  int n = 0, fin = 0;
  if (!ctx || EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(), nonce.data()) != 1 ||
      EVP_EncryptUpdate(ctx.get(), nullptr, &n, aad.data(), len_int(aad.size())) != 1 ||
      EVP_EncryptUpdate(ctx.get(), out.data() + kNonceBytes, &n, plaintext.data(),
                        len_int(plaintext.size())) != 1 ||
      EVP_EncryptFinal_ex(ctx.get(), out.data() + kNonceBytes + n, &fin) != 1 ||
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, kTagBytes,
                          out.data() + kNonceBytes + plaintext.size()) != 1) {
    throw Error(Errc::kIo, "AES-GCM encryption failed");
  }
  return out;
}

Bytes aead_seal(const AeadKey& key, ByteView plaintext, ByteView aad, Rng& rng) {
  Bytes nonce = rng.bytes(kNonceBytes);
  return aead_seal_with_nonce(key, nonce, plaintext, aad);
}

Bytes aead_open(const AeadKey& key, ByteView sealed, ByteView aad) {
  if (sealed.size() < kNonceBytes + kTagBytes) throw Error(Errc::kDecryptFailure, "ciphertext too short");
  size_t ct_len = sealed.size() - kNonceBytes - kTagBytes;
  std::unique_ptr<EVP_CIPHER_CTX, CipherCtxFree> ctx(EVP_CIPHER_CTX_new());
  Bytes out(ct_len);
  Bytes tag(sealed.end() - kTagBytes, sealed.end());
  int n = 0, fin = 0;
  if (!ctx || EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(), sealed.data()) != 1 ||
      EVP_DecryptUpdate(ctx.get(), nullptr, &n, aad.data(), len_int(aad.size())) != 1 ||
      EVP_DecryptUpdate(ctx.get(), out.data(), &n, sealed.data() + kNonceBytes, len_int(ct_len)) != 1 ||
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, kTagBytes, tag.data()) != 1 ||
      EVP_DecryptFinal_ex(ctx.get(), out.data() + n, &fin) != 1) {
    throw Error(Errc::kDecryptFailure, "authentication failed");
  }
  return out;
}

namespace {

AeadKey ecies_key(const G1& e, const G1& shared) {
  ByteWriter w;
  w.raw(e.to_bytes()).raw(shared.to_bytes());
  return to_key(hkdf(w.view(), "SAE-v1-ecies", 32));
}

}  // namespace

Bytes ecies_seal(const G1& recipient, ByteView plaintext, ByteView aad, Rng& rng) {
  Scalar e = Field::bls12_381().random(rng);
  G1 big_e = G1::generator().pow(e);
  Bytes body = aead_seal(ecies_key(big_e, recipient.pow(e)), plaintext, aad, rng);
  ByteWriter w;
  w.raw(big_e.to_bytes()).raw(body);
  return w.take();
}

G1 ecies_ephemeral(ByteView sealed) {
  if (sealed.size() < G1::kBytes) throw Error(Errc::kDecryptFailure, "ciphertext too short");
  try {
    return G1::from_bytes(sealed.subspan(0, G1::kBytes));
  } catch (const Error&) {
    throw Error(Errc::kDecryptFailure, "bad ephemeral key");
  }
}

Bytes ecies_open_shared(const G1& shared, ByteView sealed, ByteView aad) {
  G1 big_e = ecies_ephemeral(sealed);
  return aead_open(ecies_key(big_e, shared), sealed.subspan(G1::kBytes), aad);
}

Bytes ecies_open(const Scalar& sk, ByteView sealed, ByteView aad) {
  return ecies_open_shared(ecies_ephemeral(sealed).pow(sk), sealed, aad);
}

}  // namespace sae::crypto
