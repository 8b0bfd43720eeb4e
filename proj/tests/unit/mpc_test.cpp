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

#include "common/mpc_runner.hpp"
#include "sae/errors.hpp"

namespace sae::vss {
namespace {

using sae::testing::run_mpc;
using sae::testing::run_session;
using sae::testing::trusted_sharing;
using transport::Endpoint;
using transport::SimNetwork;

const CommitKey<G1>& real_ck() {
  static const CommitKey<G1> ck = PairingContext::get().commit_key();
  return ck;
}

template <typename T>
const T& value(const sae::testing::PartyResult<T>& r) {
  if (r.error) std::rethrow_exception(r.error);
  return *r.value;
}

template <typename T>
AbortReport abort_of(const sae::testing::PartyResult<T>& r) {
  EXPECT_TRUE(r.error) << "expected an abort";
  if (!r.error) return {};
  try {
    std::rethrow_exception(r.error);
  } catch (const IdentifiableAbort& e) {
    return e.report();
  } catch (const std::exception& e) {
    ADD_FAILURE() << "unexpected error: " << e.what();
  }
  return {};
}

TEST(Mpc, BehaviorNames) {
  for (auto b : {Behavior::kHonest, Behavior::kWrongMultiplyShare, Behavior::kSilentDrop,
                 Behavior::kBadDealing, Behavior::kBadExponentContribution}) {
    EXPECT_EQ(parse_behavior(behavior_name(b)), b);
  }
  EXPECT_THROW(parse_behavior("evil"), Error);
}

TEST(Mpc, DleqProofRejectsTampering) {
  const auto& ck = real_ck();
  const Field& f = *ck.field;
  Rng rng = Rng::from_u64(10);
  Scalar x = f.random(rng), r = f.random(rng);
  G1 base = G1::hash_to_group("test", as_bytes("base"));
  G1 c = ck.commit(x, r), y = base.pow(x);
  Bytes ctx(as_bytes("ctx").begin(), as_bytes("ctx").end());
  auto p = prove_dleq(ck, base, c, y, x, r, ctx, rng);
  EXPECT_TRUE(verify_dleq(ck, base, c, y, p, ctx));
  EXPECT_FALSE(verify_dleq(ck, base, c, y * base, p, ctx));
  EXPECT_FALSE(verify_dleq(ck, base, c * ck.g, y, p, ctx));
  EXPECT_FALSE(verify_dleq(ck, base, c, y, p, as_bytes("other")));
  auto q = p;
  q.z1 += f.one();
  EXPECT_FALSE(verify_dleq(ck, base, c, y, q, ctx));
  q = p;
  q.z2 += f.one();
  EXPECT_FALSE(verify_dleq(ck, base, c, y, q, ctx));
  auto rt = DleqProof<G1, G1>::decode(ck.g, base, f, p.encode());
  EXPECT_TRUE(verify_dleq(ck, base, c, y, rt, ctx));

  // Target group base.
  const auto& pc = PairingContext::get();
  Gt yt = pc.gt.pow(x);
  auto pt = prove_dleq(ck, pc.gt, c, yt, x, r, ctx, rng);
  EXPECT_TRUE(verify_dleq(ck, pc.gt, c, yt, pt, ctx));
  EXPECT_FALSE(verify_dleq(ck, pc.gt, c, yt * pc.gt, pt, ctx));
}

TEST(Mpc, ProductProofRejectsTampering) {
  const auto& ck = real_ck();
  const Field& f = *ck.field;
  Rng rng = Rng::from_u64(11);
  Scalar x = f.random(rng), a = f.random(rng), y = f.random(rng), b = f.random(rng),
         s = f.random(rng);
  G1 ca = ck.commit(x, a), cb = ck.commit(y, b), cd = ck.commit(x * y, s);
  Bytes ctx(as_bytes("ctx").begin(), as_bytes("ctx").end());
  auto p = prove_product(ck, ca, cb, cd, x, a, s - b * x, ctx, rng);
  EXPECT_TRUE(verify_product(ck, ca, cb, cd, p, ctx));
  G1 wrong = ck.commit(x * y + f.one(), s);
  EXPECT_FALSE(verify_product(ck, ca, cb, wrong, p, ctx));
  auto q = p;
  q.zz += f.one();
  EXPECT_FALSE(verify_product(ck, ca, cb, cd, q, ctx));
  EXPECT_TRUE(verify_product(ck, ca, cb, cd, ProductProof<G1>::decode(ck.g, f, p.encode()), ctx));
}

TEST(Mpc, CoinTossAgreesAndVaries) {
  SimNetwork net;
  for (uint32_t n : {3u, 5u}) {
    ProtocolConfig cfg = ProtocolConfig::for_escrows(n, 10);
    auto out = run_mpc<G1, std::pair<SharedScalar<G1>, SharedScalar<G1>>>(
        net, real_ck(), cfg, "coin" + std::to_string(n), n, {}, [](MpcContext<G1>& ctx) {
          auto a = random_coin_toss(ctx);
          auto b = random_coin_toss(ctx);
          EXPECT_EQ(ctx.rounds(), 2 * kCoinTossRounds);
          return std::make_pair(a, b);
        });
    std::vector<Share> sa, sb;
    for (uint32_t j = 0; j < n; ++j) {
      const auto& [a, b] = value(out.results[j]);
      EXPECT_EQ(a.commitments, value(out.results[0]).first.commitments);
      EXPECT_TRUE(verify_share(real_ck(), a.commitments, a.share));
      EXPECT_TRUE(out.reports[j].empty());
      sa.push_back(a.share);
      sb.push_back(b.share);
    }
    EXPECT_NE(combine_shares(sa, cfg.f), combine_shares(sb, cfg.f));
  }
}

TEST(Mpc, CoinTossDisqualifiesBadDealerAndSilentParty) {
  SimNetwork net;
  ProtocolConfig cfg = ProtocolConfig::for_escrows(5, 10);
  for (auto bad : {Behavior::kBadDealing, Behavior::kSilentDrop}) {
    auto out = run_mpc<G1, SharedScalar<G1>>(net, real_ck(), cfg, "coin-bad" + std::string(behavior_name(bad)),
                                             7, {{3, bad}}, [](MpcContext<G1>& ctx) { return random_coin_toss(ctx); });
    std::vector<Share> shares;
    for (uint32_t j = 1; j <= 5; ++j) {
      if (j == 3) continue;
      const auto& s = value(out.results[j - 1]);
      EXPECT_EQ(s.commitments, value(out.results[0]).commitments);
      EXPECT_TRUE(verify_share(real_ck(), s.commitments, s.share));
      shares.push_back(s.share);
      ASSERT_EQ(out.reports[j - 1].size(), 1u) << behavior_name(bad);
      EXPECT_EQ(out.reports[j - 1][0].culprit, 3u);
      EXPECT_EQ(out.reports[j - 1][0].phase, "coin_toss");
    }
    // Any f+1 honest shares agree.
    EXPECT_EQ(combine_shares({shares[0], shares[1], shares[2]}, 2),
              combine_shares({shares[1], shares[2], shares[3]}, 2));
  }
}

TEST(Mpc, MultiplyToyExamples) {
  const Field& f = Field::toy(23);
  auto ck = toy_commit_key(f);
  ProtocolConfig cfg{3, 1, 10, 128, true};
  SimNetwork net;
  Rng rng = Rng::from_u64(12);
  std::vector<std::pair<uint64_t, uint64_t>> cases{{3, 5}, {0, 9}, {22, 22}, {1, 17}};
  for (int i = 0; i < 20; ++i) cases.emplace_back(rng.uniform(23), rng.uniform(23));
  int k = 0;
  for (auto [x, y] : cases) {
    auto xs = trusted_sharing(ck, cfg, f.from_u64(x), rng);
    auto ys = trusted_sharing(ck, cfg, f.from_u64(y), rng);
    ++k;
    auto out = run_mpc<ToyElem, Scalar>(net, ck, cfg, "mul" + std::to_string(k), k, {},
                                        [&](MpcContext<ToyElem>& ctx) {
                                          auto z = multiply(ctx, xs[ctx.index() - 1], ys[ctx.index() - 1]);
                                          return open(ctx, z);
                                        });
    for (const auto& r : out.results) EXPECT_EQ(value(r), f.from_u64(x * y % 23)) << x << "*" << y;
  }
}

TEST(Mpc, MultiplyRealField) {
  const auto& ck = real_ck();
  const Field& f = *ck.field;
  SimNetwork net;
  Rng rng = Rng::from_u64(13);
  for (uint32_t n : {3u, 5u, 7u}) {
    ProtocolConfig cfg = ProtocolConfig::for_escrows(n, 10);
    Scalar x = f.random(rng), y = f.random(rng);
    auto xs = trusted_sharing(ck, cfg, x, rng);
    auto ys = trusted_sharing(ck, cfg, y, rng);
    auto out = run_mpc<G1, Scalar>(net, ck, cfg, "mulr" + std::to_string(n), n, {}, [&](MpcContext<G1>& ctx) {
      auto z = multiply(ctx, xs[ctx.index() - 1], ys[ctx.index() - 1]);
      EXPECT_TRUE(verify_share(ctx.ck(), z.commitments, z.share));
      return open(ctx, z);
    });
    for (const auto& r : out.results) EXPECT_EQ(value(r), x * y);
  }
}

TEST(Mpc, WrongMultiplyShareIsFatalAndNamed) {
  const Field& f = Field::toy(23);
  auto ck = toy_commit_key(f);
  ProtocolConfig cfg{5, 2, 10, 128, true};
  SimNetwork net;
  Rng rng = Rng::from_u64(14);
  auto xs = trusted_sharing(ck, cfg, f.from_u64(4), rng);
  auto ys = trusted_sharing(ck, cfg, f.from_u64(6), rng);
  auto out = run_mpc<ToyElem, Scalar>(net, ck, cfg, "mulbad", 1, {{4, Behavior::kWrongMultiplyShare}},
                                      [&](MpcContext<ToyElem>& ctx) {
                                        return open(ctx, multiply(ctx, xs[ctx.index() - 1], ys[ctx.index() - 1]));
                                      });
  for (uint32_t j = 1; j <= 5; ++j) {
    if (j == 4) continue;
    AbortReport r = abort_of(out.results[j - 1]);
    EXPECT_EQ(r.culprit, 4u);
    EXPECT_EQ(r.phase, "multiply");
  }
}

TEST(Mpc, OpenSkipsSilentParty) {
  const auto& ck = real_ck();
  const Field& f = *ck.field;
  ProtocolConfig cfg = ProtocolConfig::for_escrows(5, 10);
  SimNetwork net;
  Rng rng = Rng::from_u64(15);
  Scalar x = f.random(rng);
  auto xs = trusted_sharing(ck, cfg, x, rng);
  auto out = run_mpc<G1, Scalar>(net, ck, cfg, "open", 2, {{1, Behavior::kSilentDrop}},
                                 [&](MpcContext<G1>& ctx) { return open(ctx, xs[ctx.index() - 1]); });
  for (uint32_t j = 2; j <= 5; ++j) {
    EXPECT_EQ(value(out.results[j - 1]), x);
    ASSERT_EQ(out.reports[j - 1].size(), 1u);
    EXPECT_EQ(out.reports[j - 1][0].culprit, 1u);
  }
}

TEST(Mpc, PublicExponentiateToEscrows) {
  const auto& ck = real_ck();
  const auto& pc = PairingContext::get();
  const Field& f = *ck.field;
  ProtocolConfig cfg = ProtocolConfig::for_escrows(5, 10);
  SimNetwork net;
  Rng rng = Rng::from_u64(16);
  Scalar x = f.random(rng);
  auto xs = trusted_sharing(ck, cfg, x, rng);
  for (uint32_t bad : {0u, 2u}) {
    std::map<uint32_t, Behavior> behaviors;
    if (bad) behaviors[bad] = Behavior::kBadExponentContribution;
    auto out = run_mpc<G1, std::pair<G1, Gt>>(
        net, ck, cfg, "pexp" + std::to_string(bad), 3, behaviors, [&](MpcContext<G1>& ctx) {
          auto a = public_exponentiate(ctx, pc.g, xs[ctx.index() - 1], Recipient::escrows());
          auto b = public_exponentiate(ctx, pc.gt, xs[ctx.index() - 1], Recipient::escrows());
          return std::make_pair(*a, *b);
        });
    for (uint32_t j = 1; j <= 5; ++j) {
      if (j == bad) continue;
      EXPECT_EQ(value(out.results[j - 1]).first, pc.g.pow(x));
      EXPECT_EQ(value(out.results[j - 1]).second, pc.gt.pow(x));
      if (bad) {
        ASSERT_EQ(out.reports[j - 1].size(), 1u);
        EXPECT_EQ(out.reports[j - 1][0].culprit, bad);
        EXPECT_EQ(out.reports[j - 1][0].phase, "public_exponentiate");
      } else {
        EXPECT_TRUE(out.reports[j - 1].empty());
      }
    }
  }
}

TEST(Mpc, PublicExponentiateToClient) {
  const auto& ck = real_ck();
  const auto& pc = PairingContext::get();
  const Field& f = *ck.field;
  ProtocolConfig cfg = ProtocolConfig::for_escrows(5, 10);
  SimNetwork net;
  Rng rng = Rng::from_u64(17);
  Scalar x = f.random(rng);
  auto xs = trusted_sharing(ck, cfg, x, rng);
  const transport::NodeId client = transport::kFirstClientId;
  std::vector<transport::NodeId> members = sae::testing::ids(5);
  members.push_back(client);
  for (uint32_t bad : {0u, 5u}) {
    auto out = run_session<std::optional<G1>>(net, "pexpc" + std::to_string(bad), members, [&](Endpoint& ep) {
      if (ep.self() == client) return std::optional<G1>(receive_exponentiation(ck, cfg, ep, pc.g));
      Rng r = Rng::from_u64(ep.self());
      MpcContext<G1> ctx(ck, cfg, ep, r, ep.self() == bad ? Behavior::kBadExponentContribution : Behavior::kHonest);
      EXPECT_FALSE(public_exponentiate(ctx, pc.g, xs[ep.self() - 1], Recipient::to_client(client)));
      return std::optional<G1>();
    });
    if (bad == 0) {
      EXPECT_EQ(*value(out[5]), pc.g.pow(x));
    } else {
      AbortReport r = abort_of(out[5]);
      EXPECT_EQ(r.culprit, bad);
      try {
        std::rethrow_exception(out[5].error);
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::kMacVerifyFailed);
      }
    }
  }
}

TEST(Mpc, MissingEscrowTimesOut) {
  SimNetwork net(SimNetwork::Options{std::chrono::milliseconds(300)});
  ProtocolConfig cfg = ProtocolConfig::for_escrows(3, 10);
  net.partition(3);
  auto out = run_mpc<G1, SharedScalar<G1>>(net, real_ck(), cfg, "timeout", 1, {},
                                           [](MpcContext<G1>& ctx) { return random_coin_toss(ctx); });
  for (uint32_t j = 1; j <= 2; ++j) {
    ASSERT_TRUE(out.results[j - 1].error);
    try {
      std::rethrow_exception(out.results[j - 1].error);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::kTimeout);
    }
  }
}

}  // namespace
}  // namespace sae::vss
