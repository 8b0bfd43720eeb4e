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

#include <cstdint>

#include "sae/algebra/config.hpp"
#include "sae/algebra/field.hpp"
#include "sae/algebra/groups.hpp"
#include "sae/algebra/hash.hpp"
#include "sae/algebra/rng.hpp"
#include "sae/errors.hpp"

namespace sae {
namespace {

// Independent inverse oracle: extended Euclid on signed 64-bit ints.
int64_t euclid_inverse(int64_t x, int64_t q) {
  int64_t r0 = q, r1 = x % q, s0 = 0, s1 = 1;
  while (r1 != 0) {
    int64_t k = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - k * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - k * s1);
  }
  return ((s0 % q) + q) % q;
}

TEST(Field, ToyInverseExamples) {
  const Field& f = Field::toy(23);
  EXPECT_EQ(f.one().inverse(), f.one());
  EXPECT_EQ(f.from_u64(5).inverse(), f.from_u64(14));
  EXPECT_EQ(f.from_u64(5) * f.from_u64(14), f.one());
  try {
    (void)scalar_inverse(f.zero());
    FAIL() << "expected ZeroInverse";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kZeroInverse);
  }
}

TEST(Field, ToyInverseMatchesEuclid) {
  for (uint64_t q : {23u, 101u, 65537u}) {
    const Field& f = Field::toy(q);
    for (uint64_t x = 1; x < std::min<uint64_t>(q, 500); ++x) {
      EXPECT_EQ(f.from_u64(x).inverse().to_u64(),
                static_cast<uint64_t>(euclid_inverse(static_cast<int64_t>(x), static_cast<int64_t>(q))));
    }
  }
}

TEST(Field, RejectsNonPrimeToy) {
  EXPECT_THROW(Field::toy(21), Error);
  EXPECT_THROW(Field::toy(2), Error);
}

TEST(Field, AxiomsRandomized) {
  Rng rng = Rng::from_u64(1);
  for (const Field* f : {&Field::bls12_381(), &Field::toy(23)}) {
    for (int i = 0; i < 200; ++i) {
      Scalar a = f->random(rng), b = f->random(rng), c = f->random(rng);
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a - a, f->zero());
      EXPECT_EQ(a + (-a), f->zero());
      if (!a.is_zero()) {
        EXPECT_EQ(a * a.inverse(), f->one());
      }
    }
  }
}

TEST(Field, MixedFieldsThrow) {
  const Field& a = Field::toy(23);
  const Field& b = Field::toy(29);
  EXPECT_THROW((void)(a.one() + b.one()), Error);
}

TEST(Field, SerializationRoundTrip) {
  Rng rng = Rng::from_u64(2);
  const Field& f = Field::bls12_381();
  for (int i = 0; i < 100; ++i) {
    Scalar a = f.random(rng);
    Bytes b = a.to_bytes();
    ASSERT_EQ(b.size(), 32u);
    EXPECT_EQ(f.from_bytes(b), a);
  }
  // q itself is not a canonical encoding.
  Bytes q_bytes = from_hex("73eda753299d7d483339d80809a1d80553bda402fffe5bfeffffffff00000001");
  EXPECT_THROW(f.from_bytes(q_bytes), Error);
  EXPECT_EQ(f.reduce(q_bytes), f.zero());
}

TEST(Config, RejectsBadShape) {
  ProtocolConfig cfg;
  cfg.n = 4;
  cfg.f = 1;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = ProtocolConfig::for_escrows(5);
  EXPECT_EQ(cfg.f, 2u);
  cfg.l = 0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg.l = 1;
  cfg.lambda = 80;
  EXPECT_THROW(cfg.validate(), Error);
  cfg.toy = true;
  EXPECT_NO_THROW(cfg.validate());
}

class PairingTest : public ::testing::Test {
 protected:
  const PairingContext& ctx = PairingContext::get();
  const Field& f = Field::bls12_381();
};

TEST_F(PairingTest, GeneratorCaseIsCachedGt) {
  EXPECT_EQ(pairing(ctx.g, ctx.g2), ctx.gt);
  EXPECT_FALSE(ctx.gt.is_identity());
}

TEST_F(PairingTest, SmallExponents) {
  Scalar two = f.from_u64(2), three = f.from_u64(3), six = f.from_u64(6);
  EXPECT_EQ(pairing(ctx.g.pow(two), ctx.g2.pow(three)), ctx.gt.pow(six));
}

TEST_F(PairingTest, BilinearityAndSymmetry) {
  Rng rng = Rng::from_u64(3);
  for (int i = 0; i < 100; ++i) {
    Scalar x = f.random(rng), y = f.random(rng);
    Gt lhs = pairing(ctx.g.pow(x), ctx.g2.pow(y));
    EXPECT_EQ(lhs, ctx.gt.pow(x * y));
    if (i < 50) {
      EXPECT_EQ(lhs, pairing(ctx.g.pow(y), ctx.g2.pow(x)));
    }
  }
}

TEST_F(PairingTest, GroupLawsAndEncodings) {
  Rng rng = Rng::from_u64(4);
  for (int i = 0; i < 20; ++i) {
    Scalar x = f.random(rng), y = f.random(rng);
    G1 a = ctx.g.pow(x);
    G2 b = ctx.g2.pow(y);
    Gt c = ctx.gt.pow(x);
    EXPECT_EQ(a * ctx.g.pow(y), ctx.g.pow(x + y));
    EXPECT_EQ(b * ctx.g2.pow(x), ctx.g2.pow(x + y));
    EXPECT_EQ(c * ctx.gt.pow(y), ctx.gt.pow(x + y));
    EXPECT_TRUE((a * a.inverse()).is_identity());
    EXPECT_TRUE((c * c.inverse()).is_identity());
    EXPECT_EQ(G1::from_bytes(a.to_bytes()), a);
    EXPECT_EQ(G1::from_bytes(a.to_bytes()).to_bytes(), a.to_bytes());
    EXPECT_EQ(G2::from_bytes(b.to_bytes()), b);
    EXPECT_EQ(Gt::from_bytes(c.to_bytes()), c);
  }
  EXPECT_EQ(G1::from_bytes(G1().to_bytes()), G1());
  EXPECT_EQ(Gt::from_bytes(Gt().to_bytes()), Gt());
  EXPECT_EQ(ctx.g.pow(f.zero()), G1());
  EXPECT_EQ(ctx.gt.pow(f.from_mpz(f.modulus() - 1)) * ctx.gt, Gt());
}

TEST_F(PairingTest, DecodeRejectsGarbage) {
  Bytes junk(G1::kBytes, 0x11);
  EXPECT_THROW(G1::from_bytes(junk), Error);
  Bytes gt = ctx.gt.to_bytes();
  gt[100] ^= 1;
  EXPECT_THROW(Gt::from_bytes(gt), Error);
  EXPECT_THROW(G2::from_bytes(Bytes(5)), Error);
}

TEST_F(PairingTest, PedersenGeneratorIndependentOfG) {
  EXPECT_NE(ctx.h, ctx.g);
  EXPECT_FALSE(ctx.h.is_identity());
}

TEST(ToyGroup, SubgroupOfOrderQ) {
  const Field& f = Field::toy(23);
  CommitKey<ToyElem> ck = toy_commit_key(f);
  EXPECT_TRUE(ck.g.pow(f.from_u64(0)).is_identity());
  EXPECT_FALSE(ck.g.is_identity());
  EXPECT_FALSE(ck.h.is_identity());
  EXPECT_NE(ck.g, ck.h);
  // g^q = 1
  EXPECT_TRUE(ck.g.pow(Scalar(f, 23)).is_identity());
  for (uint64_t x = 0; x < 23; ++x) {
    ToyElem e = ck.g.pow(f.from_u64(x));
    EXPECT_EQ(ck.g.decode(e.to_bytes()), e);
  }
}

TEST(Hash, DeterministicAndSeparated) {
  ByteView xv = as_bytes("allegation meta");
  Bytes x(xv.begin(), xv.end());
  EXPECT_EQ(hash_to_scalar(kTagMeta, x), hash_to_scalar(kTagMeta, x));
  EXPECT_NE(hash_to_scalar(kTagMeta, x), hash_to_scalar(kTagPubKey, x));
  EXPECT_NE(hash_to_scalar("H1", x), hash_to_scalar("H2", x));
}

TEST(Hash, OutputsInRange) {
  Rng rng = Rng::from_u64(5);
  const Field& f = Field::bls12_381();
  for (int i = 0; i < 10000; ++i) {
    Bytes in = rng.bytes(16);
    Scalar s = hash_to_scalar(kTagMeta, in);
    ASSERT_LT(s.value(), f.modulus());
  }
  const Field& toy = Field::toy(23);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_LT(hash_to_scalar(kTagMeta, rng.bytes(8), toy).to_u64(), 23u);
  }
}

TEST(Rng, SeededStreamsReproduce) {
  Rng a = Rng::from_u64(9), b = Rng::from_u64(9), c = Rng::from_u64(10);
  EXPECT_EQ(a.bytes(100), b.bytes(100));
  Rng fa = a.fork("x"), fb = b.fork("x"), fc = a.fork("y");
  EXPECT_EQ(fa.next_u64(), fb.next_u64());
  EXPECT_NE(fa.next_u64(), fc.next_u64());
  EXPECT_NE(a.bytes(32), c.bytes(32));
  for (int i = 0; i < 1000; ++i) EXPECT_LT(a.uniform(7), 7u);
}

}  // namespace
}  // namespace sae
