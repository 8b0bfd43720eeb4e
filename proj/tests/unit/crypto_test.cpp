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

#include <gtest/gtest.h>

#include "sae/crypto/aead.hpp"
#include "sae/crypto/ca.hpp"
#include "sae/crypto/keystore.hpp"
#include "sae/crypto/sign.hpp"
#include "sae/errors.hpp"

namespace sae::crypto {
namespace {

Bytes text(std::string_view s) { return Bytes(s.begin(), s.end()); }

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::kIo;
}

TEST(Sign, RoundTripAndTamper) {
  Rng rng = Rng::from_u64(40);
  KeyPair k = KeyPair::generate(rng), other = KeyPair::generate(rng);
  Bytes msg = text("hello");
  Signature sig = sign(k, msg, rng);
  EXPECT_TRUE(verify(k.pk, msg, sig));
  EXPECT_FALSE(verify(other.pk, msg, sig));
  EXPECT_FALSE(verify(k.pk, text("hellp"), sig));
  Signature bad = sig;
  bad.s += Field::bls12_381().one();
  EXPECT_FALSE(verify(k.pk, msg, bad));
  EXPECT_FALSE(verify(G1(), msg, sig));
  EXPECT_EQ(Signature::decode(sig.encode()), sig);
  EXPECT_TRUE(verify_encoded(k.pk.to_bytes(), msg, sig.encode()));
  Bytes enc = sig.encode();
  enc.back() ^= 1;
  EXPECT_FALSE(verify_encoded(k.pk.to_bytes(), msg, enc));
  EXPECT_FALSE(verify_encoded(text("junk"), msg, sig.encode()));
  // Fresh randomness gives distinct signatures that both verify.
  Signature sig2 = sign(k, msg, rng);
  EXPECT_NE(sig, sig2);
  EXPECT_TRUE(verify(k.pk, msg, sig2));
}

TEST(Certificate, IssueVerifyAndReject) {
  Rng rng = Rng::from_u64(41);
  auto ca = CertificateAuthority::generate(rng);
  auto rogue = CertificateAuthority::generate(rng);
  KeyPair user = KeyPair::generate(rng);
  Certificate cert = ca.issue("alice@example.org", user.pk, rng);
  EXPECT_TRUE(verify_certificate(ca.public_key(), cert));
  EXPECT_FALSE(verify_certificate(rogue.public_key(), cert));
  Certificate renamed = cert;
  renamed.identity = "mallory@example.org";
  EXPECT_FALSE(verify_certificate(ca.public_key(), renamed));
  Certificate decoded = Certificate::decode(cert.encode());
  EXPECT_EQ(decoded.identity, cert.identity);
  EXPECT_TRUE(verify_certificate(ca.public_key(), decoded));
  EXPECT_THROW(Certificate::decode(text("x")), Error);
}

TEST(Aead, RoundTripTamperAndWrongKey) {
  Rng rng = Rng::from_u64(42);
  const Field& f = Field::bls12_381();
  AeadKey key = key_from_scalar(f.random(rng));
  AeadKey other = key_from_scalar(f.random(rng));
  Bytes pt = text("the accused did it"), aad = text("ctx");
  Bytes ct = aead_seal(key, pt, aad, rng);
  EXPECT_EQ(ct.size(), pt.size() + kNonceBytes + kTagBytes);
  EXPECT_EQ(aead_open(key, ct, aad), pt);
  EXPECT_EQ(code_of([&] { aead_open(other, ct, aad); }), Errc::kDecryptFailure);
  EXPECT_EQ(code_of([&] { aead_open(key, ct, text("cty")); }), Errc::kDecryptFailure);
  for (size_t i : {size_t{0}, kNonceBytes, ct.size() - 1}) {
    Bytes bad = ct;
    bad[i] ^= 0x80;
    EXPECT_EQ(code_of([&] { aead_open(key, bad, aad); }), Errc::kDecryptFailure);
  }
  EXPECT_EQ(code_of([&] { aead_open(key, Bytes(5), aad); }), Errc::kDecryptFailure);
  EXPECT_EQ(aead_open(key, aead_seal(key, {}, {}, rng), {}), Bytes{});
  EXPECT_EQ(key_from_scalar(f.from_u64(7)), key_from_scalar(f.from_u64(7)));
}

// RFC 5869 test case 1.
TEST(Aead, HkdfKnownAnswer) {
  Bytes ikm(22, 0x0b);
  Bytes salt = from_hex("000102030405060708090a0b0c");
  Bytes info = from_hex("f0f1f2f3f4f5f6f7f8f9");
  Bytes okm = hkdf(ikm, std::string_view(reinterpret_cast<const char*>(info.data()), info.size()), 42, salt);
  EXPECT_EQ(to_hex(okm),
            "3cb25f25faacd57a90434f64d0362f2a2d2d0a90cf1a5a4c5db02d56ecc4c5bf34007208d5b887185865");
}

TEST(Ecies, RoundTripAndWrongKey) {
  Rng rng = Rng::from_u64(43);
  KeyPair k = KeyPair::generate(rng), other = KeyPair::generate(rng);
  Bytes pt = text("share bytes"), aad = text("file/1");
  Bytes ct = ecies_seal(k.pk, pt, aad, rng);
  EXPECT_EQ(ecies_open(k.sk, ct, aad), pt);
  EXPECT_EQ(code_of([&] { ecies_open(other.sk, ct, aad); }), Errc::kDecryptFailure);
  EXPECT_EQ(code_of([&] { ecies_open(k.sk, ct, text("file/2")); }), Errc::kDecryptFailure);
  Bytes bad = ct;
  bad[3] ^= 1;
  EXPECT_EQ(code_of([&] { ecies_open(k.sk, bad, aad); }), Errc::kDecryptFailure);
  EXPECT_EQ(code_of([&] { ecies_open(k.sk, Bytes(10), aad); }), Errc::kDecryptFailure);
}

TEST(Keystore, SealOpenAndWrongPassword) {
  Rng rng = Rng::from_u64(44);
  Bytes secret = text("long-term key material");
  Bytes sealed = keystore_seal(secret, "hunter2", rng, 1000);
  EXPECT_EQ(keystore_open(sealed, "hunter2"), secret);
  EXPECT_EQ(code_of([&] { keystore_open(sealed, "hunter3"); }), Errc::kDecryptFailure);
  Bytes bad = sealed;
  bad[2] ^= 1;  // salt
  EXPECT_EQ(code_of([&] { keystore_open(bad, "hunter2"); }), Errc::kDecryptFailure);
  EXPECT_EQ(code_of([&] { keystore_open(Bytes{1}, "hunter2"); }), Errc::kDecryptFailure);
  std::string path = ::testing::TempDir() + "/sae_keystore_test.bin";
  write_file(path, sealed);
  EXPECT_EQ(keystore_open(read_file(path), "hunter2"), secret);
  EXPECT_EQ(code_of([&] { read_file(path + ".missing"); }), Errc::kIo);
}

}  // namespace
}  // namespace sae::crypto
