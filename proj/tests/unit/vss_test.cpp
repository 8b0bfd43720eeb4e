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

#include <algorithm>

#include "sae/errors.hpp"
#include "sae/vss/vss.hpp"

namespace sae::vss {
namespace {

const Field& toy() { return Field::toy(23); }

std::vector<std::vector<uint32_t>> subsets(uint32_t n, uint32_t k) {
  std::vector<std::vector<uint32_t>> out;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + k, true);
  do {
    std::vector<uint32_t> s;
    for (uint32_t i = 0; i < n; ++i) {
      if (pick[i]) s.push_back(i + 1);
    }
    out.push_back(s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

TEST(Vss, LinearPolynomialExample) {
  const Field& f = toy();
  auto ck = toy_commit_key(f);
  auto d = deal_vss_with(ck, {f.from_u64(7), f.from_u64(3)}, {}, 3);
  ASSERT_EQ(d.shares.size(), 3u);
  EXPECT_EQ(d.shares[0].value, f.from_u64(10));
  EXPECT_EQ(d.shares[1].value, f.from_u64(13));
  EXPECT_EQ(d.shares[2].value, f.from_u64(16));
  EXPECT_EQ(combine_shares({d.shares[0], d.shares[1]}, 1), f.from_u64(7));
  EXPECT_EQ(combine_shares({d.shares[2], d.shares[1]}, 1), f.from_u64(7));
  for (const Share& s : d.shares) EXPECT_TRUE(verify_share(ck, d.commitments, s));
}

TEST(Vss, ZeroSecretAndConstantPolynomial) {
  const Field& f = toy();
  auto ck = toy_commit_key(f);
  auto d = deal_vss_with(ck, {f.zero(), f.from_u64(5)}, {}, 3);
  EXPECT_EQ(combine_shares(d.shares, 1), f.zero());
  auto c = public_constant(ck, f.from_u64(9), 2, 1);
  EXPECT_TRUE(verify_share(ck, c.commitments, c.share));
}

TEST(Vss, InsufficientShares) {
  const Field& f = toy();
  auto ck = toy_commit_key(f);
  auto d = deal_vss_with(ck, {f.from_u64(7), f.from_u64(3)}, {}, 3);
  EXPECT_THROW(
      {
        try {
          combine_shares({d.shares[0]}, 1);
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), Errc::kInsufficientShares);
          throw;
        }
      },
      Error);
  // Duplicate indices do not count twice.
  EXPECT_THROW(combine_shares({d.shares[0], d.shares[0]}, 1), Error);
}

TEST(Vss, TamperedShareIsNamed) {
  Rng rng = Rng::from_u64(1);
  for (bool real : {false, true}) {
    const Field& f = real ? Field::bls12_381() : toy();
    ProtocolConfig cfg{5, 2, 10, 128, !real};
    auto run = [&](auto ck) {
      auto d = deal_vss(ck, f.random(rng), cfg, CommitMode::kPedersen, rng);
      for (uint32_t j = 0; j < cfg.n; ++j) {
        for (int field_sel = 0; field_sel < 2; ++field_sel) {
          auto shares = d.shares;
          if (field_sel == 0) {
            shares[j].value += f.one();
          } else {
            shares[j].blinding += f.one();
          }
          EXPECT_FALSE(verify_share(ck, d.commitments, shares[j]));
          try {
            combine_shares(ck, d.commitments, shares, cfg.f);
            ADD_FAILURE() << "tampered share accepted";
          } catch (const IdentifiableAbort& e) {
            EXPECT_EQ(e.code(), Errc::kInconsistentShares);
            EXPECT_EQ(e.report().culprit, j + 1);
          }
        }
      }
      auto wrong_index = d.shares[0];
      wrong_index.index = 2;
      EXPECT_FALSE(verify_share(ck, d.commitments, wrong_index));
    };
    if (real) {
      run(PairingContext::get().commit_key());
    } else {
      run(toy_commit_key(f));
    }
  }
}

TEST(Vss, EverySubsetAgrees) {
  Rng rng = Rng::from_u64(2);
  const Field& f = Field::bls12_381();
  auto ck = PairingContext::get().commit_key();
  for (uint32_t n : {3u, 5u, 7u}) {
    ProtocolConfig cfg = ProtocolConfig::for_escrows(n, 10);
    Scalar secret = f.random(rng);
    auto d = deal_vss(ck, secret, cfg, CommitMode::kPedersen, rng);
    for (const auto& s : subsets(n, cfg.f + 1)) {
      std::vector<Share> pick;
      for (uint32_t j : s) pick.push_back(d.shares[j - 1]);
      EXPECT_EQ(combine_shares(ck, d.commitments, pick, cfg.f), secret);
    }
  }
}

// Perfect hiding of Pedersen dealings: for any f shares and any candidate
// secret there is a polynomial pair matching the shares and the commitments.
TEST(Vss, PedersenSecrecyWitness) {
  const Field& f = toy();
  auto ck = toy_commit_key(f);
  // log_g(h) by exhaustive search in the order-23 group.
  Scalar w = f.zero();
  for (uint64_t e = 0; e < 23; ++e) {
    if (ck.g.pow(f.from_u64(e)) == ck.h) w = f.from_u64(e);
  }
  ASSERT_FALSE(w.is_zero());
  Rng rng = Rng::from_u64(3);
  ProtocolConfig cfg{5, 2, 10, 128, true};
  int witnesses = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Scalar> a, b;
    for (uint32_t k = 0; k <= cfg.f; ++k) {
      a.push_back(f.random(rng));
      b.push_back(f.random(rng));
    }
    auto d = deal_vss_with(ck, a, b, cfg.n);
    std::vector<uint32_t> seen{static_cast<uint32_t>(1 + trial % 3),
                               static_cast<uint32_t>(4 + trial % 2)};
    Scalar alt = f.random(rng);
    // a' is the degree-f polynomial through (0, alt) and the seen shares.
    std::vector<Scalar> xs{f.zero()}, ys{alt};
    for (uint32_t j : seen) {
      xs.push_back(f.from_u64(j));
      ys.push_back(d.shares[j - 1].value);
    }
    // Coefficients of a' by solving the Vandermonde system via Lagrange basis
    // expansion.
    std::vector<Scalar> a2(cfg.f + 1, f.zero());
    for (size_t i = 0; i < xs.size(); ++i) {
      std::vector<Scalar> basis{f.one()};
      Scalar den = f.one();
      for (size_t m = 0; m < xs.size(); ++m) {
        if (m == i) continue;
        std::vector<Scalar> next(basis.size() + 1, f.zero());
        for (size_t k = 0; k < basis.size(); ++k) {
          next[k + 1] += basis[k];
          next[k] -= basis[k] * xs[m];
        }
        basis = next;
        den *= xs[i] - xs[m];
      }
      Scalar scale = ys[i] * den.inverse();
      for (size_t k = 0; k < a2.size(); ++k) a2[k] += basis[k] * scale;
    }
    std::vector<Scalar> b2;
    for (uint32_t k = 0; k <= cfg.f; ++k) b2.push_back(b[k] + (a[k] - a2[k]) * w.inverse());
    auto alt_dealing = deal_vss_with(ck, a2, b2, cfg.n);
    EXPECT_EQ(a2[0], alt);
    EXPECT_EQ(alt_dealing.commitments, d.commitments);
    for (uint32_t j : seen) EXPECT_EQ(alt_dealing.shares[j - 1], d.shares[j - 1]);
    ++witnesses;
  }
  EXPECT_EQ(witnesses, 100);
}

TEST(Vss, LocalOperations) {
  const Field& f = toy();
  auto ck = toy_commit_key(f);
  auto x = deal_vss_with(ck, {f.from_u64(7), f.from_u64(3)}, {f.from_u64(1), f.from_u64(2)}, 3);
  auto y = deal_vss_with(ck, {f.from_u64(5), f.from_u64(11)}, {f.from_u64(4), f.from_u64(6)}, 3);
  std::vector<Share> sum, scaled, zeroed;
  for (uint32_t j = 1; j <= 3; ++j) {
    SharedScalar<ToyElem> sx{x.shares[j - 1], x.commitments}, sy{y.shares[j - 1], y.commitments};
    auto s = add_local(sx, sy);
    EXPECT_TRUE(verify_share(ck, s.commitments, s.share));
    sum.push_back(s.share);
    auto c = scale_local(f.from_u64(4), sx);
    EXPECT_TRUE(verify_share(ck, c.commitments, c.share));
    scaled.push_back(c.share);
    zeroed.push_back(scale_local(f.zero(), sx).share);
    EXPECT_EQ(scale_local(f.one(), sx).share, sx.share);
  }
  EXPECT_EQ(combine_shares(sum, 1), f.from_u64(12));
  EXPECT_EQ(combine_shares(scaled, 1), f.from_u64(5));  // 28 mod 23
  EXPECT_EQ(combine_shares(zeroed, 1), f.zero());
  EXPECT_THROW(add_local(x.shares[0], y.shares[1]), Error);
}

TEST(Vss, HomomorphismRandomized) {
  Rng rng = Rng::from_u64(4);
  const Field& f = Field::bls12_381();
  auto ck = PairingContext::get().commit_key();
  ProtocolConfig cfg = ProtocolConfig::for_escrows(5, 10);
  for (int trial = 0; trial < 10; ++trial) {
    Scalar a = f.random(rng), b = f.random(rng), c = f.random(rng);
    auto da = deal_vss(ck, a, cfg, CommitMode::kPedersen, rng);
    auto db = deal_vss(ck, b, cfg, CommitMode::kFeldman, rng);
    std::vector<Share> out;
    for (uint32_t j = 1; j <= cfg.n; ++j) {
      auto s = add_local(scale_local(c, SharedScalar<G1>{da.shares[j - 1], da.commitments}),
                         SharedScalar<G1>{db.shares[j - 1], db.commitments});
      out.push_back(s.share);
      if (j == 1) EXPECT_TRUE(verify_share(ck, s.commitments, s.share));
    }
    EXPECT_EQ(combine_shares(out, cfg.f), c * a + b);
  }
}

TEST(Vss, Serialization) {
  Rng rng = Rng::from_u64(5);
  const Field& f = Field::bls12_381();
  auto ck = PairingContext::get().commit_key();
  auto d = deal_vss(ck, f.random(rng), ProtocolConfig{}, CommitMode::kPedersen, rng);
  EXPECT_EQ(decode_share(f, encode_share(d.shares[1])), d.shares[1]);
  EXPECT_EQ(Commitments<G1>::decode(ck.g, d.commitments.encode(), 1), d.commitments);
  EXPECT_THROW(Commitments<G1>::decode(ck.g, d.commitments.encode(), 2), Error);
  Bytes bad = encode_share(d.shares[0]);
  bad.push_back(0);
  EXPECT_THROW(decode_share(f, bad), Error);
}

}  // namespace
}  // namespace sae::vss
