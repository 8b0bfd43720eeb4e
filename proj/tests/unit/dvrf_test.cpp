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

#include <set>

#include "common/mpc_runner.hpp"
#include "sae/dvrf/dvrf.hpp"
#include "sae/errors.hpp"

namespace sae::dvrf {
namespace {

using sae::testing::run_mpc;
using sae::testing::run_session;
using sae::testing::trusted_sharing;
using transport::SimNetwork;

const PairingContext& pc() { return PairingContext::get(); }

Errc error_code(const std::exception_ptr& e) {
  try {
    std::rethrow_exception(e);
  } catch (const Error& err) {
    return err.code();
  }
}

TEST(ReferenceVrf, ProvableAndUnique) {
  const Field& f = *pc().field;
  Rng rng = Rng::from_u64(20);
  std::set<Bytes> values;
  for (int i = 0; i < 100; ++i) {
    Scalar sk = f.random(rng), x = f.random(rng);
    VrfOutput out = reference_vrf(sk, x);
    G2 pk = pc().g2.pow(sk);
    ASSERT_TRUE(out.proof);
    EXPECT_TRUE(verify_vrf(pk, *out.proof, x));
    EXPECT_FALSE(verify_vrf(pk, *out.proof, x + f.one()));
    EXPECT_FALSE(verify_vrf(pk, pc().g, x));
    EXPECT_EQ(vrf_value(*out.proof), out.value);
    values.insert(out.value.to_bytes());
  }
  EXPECT_EQ(values.size(), 100u);
}

TEST(ReferenceVrf, ZeroKeyAndDegenerateInput) {
  const Field& f = *pc().field;
  Scalar x = f.from_u64(5);
  EXPECT_EQ(reference_vrf(f.zero(), x).value, pc().gt.pow(x.inverse()));
  try {
    reference_vrf(f.from_u64(3), -f.from_u64(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kDegenerateInput);
  }
  EXPECT_FALSE(verify_vrf(pc().g2, G1::generator().identity(), x));
}

TEST(Dvrf, MatchesReferenceForAllRecipients) {
  const auto ck = pc().commit_key();
  const Field& f = *ck.field;
  SimNetwork net;
  Rng rng = Rng::from_u64(21);
  for (uint32_t n : {3u, 5u, 7u}) {
    ProtocolConfig cfg = ProtocolConfig::for_escrows(n, 10);
    Scalar sk = f.random(rng), x = f.random(rng);
    VrfOutput expect = reference_vrf(sk, x);
    auto sks = trusted_sharing(ck, cfg, sk, rng);
    auto xs = trusted_sharing(ck, cfg, x, rng);
    for (bool flag : {false, true}) {
      auto out = run_mpc<G1, VrfOutput>(net, ck, cfg, "dvrf" + std::to_string(n) + std::to_string(flag), n, {},
                                        [&](vss::MpcContext<G1>& ctx) {
                                          auto v = dvrf(ctx, sks[ctx.index() - 1], xs[ctx.index() - 1], flag,
                                                        vss::Recipient::escrows());
                                          EXPECT_EQ(ctx.rounds(), kDvrfRounds);
                                          return *v;
                                        });
      for (const auto& r : out.results) {
        ASSERT_TRUE(r.ok());
        EXPECT_EQ(r.value->value, expect.value);
        if (flag) {
          EXPECT_EQ(r.value->proof, expect.proof);
          EXPECT_TRUE(verify_vrf(pc().g2.pow(sk), *r.value->proof, x));
        } else {
          EXPECT_FALSE(r.value->proof);
        }
      }
    }
    // Proof delivered to a client only.
    const transport::NodeId client = transport::kFirstClientId + n;
    auto members = sae::testing::ids(n);
    members.push_back(client);
    auto out = run_session<std::optional<VrfOutput>>(net, "dvrfc" + std::to_string(n), members,
                                                     [&](transport::Endpoint& ep) {
                                                       if (ep.self() == client) {
                                                         return std::optional(receive_dvrf(cfg, ep, true));
                                                       }
                                                       Rng r = Rng::from_u64(ep.self());
                                                       vss::MpcContext<G1> ctx(ck, cfg, ep, r);
                                                       return dvrf(ctx, sks[ep.self() - 1], xs[ep.self() - 1],
                                                                   true, vss::Recipient::to_client(client));
                                                     });
    for (uint32_t j = 0; j < n; ++j) {
      ASSERT_TRUE(out[j].ok());
      EXPECT_FALSE(*out[j].value);
    }
    ASSERT_TRUE(out[n].ok());
    EXPECT_EQ(**out[n].value, expect);
  }
}

TEST(Dvrf, DeterministicAcrossBlinds) {
  const auto ck = pc().commit_key();
  const Field& f = *ck.field;
  SimNetwork net;
  Rng rng = Rng::from_u64(22);
  ProtocolConfig cfg;
  auto sks = trusted_sharing(ck, cfg, f.random(rng), rng);
  auto xs = trusted_sharing(ck, cfg, f.random(rng), rng);
  auto out = run_mpc<G1, std::pair<Gt, Bytes>>(net, ck, cfg, "det", 1, {}, [&](vss::MpcContext<G1>& ctx) {
    DvrfTrace a, b;
    auto v1 = dvrf(ctx, sks[ctx.index() - 1], xs[ctx.index() - 1], false, vss::Recipient::escrows(), &a);
    auto v2 = dvrf(ctx, sks[ctx.index() - 1], xs[ctx.index() - 1], false, vss::Recipient::escrows(), &b);
    EXPECT_EQ(v1->value, v2->value);
    EXPECT_NE(a.t2, b.t2);
    return std::make_pair(v1->value, a.t2.to_bytes());
  });
  for (const auto& r : out.results) EXPECT_EQ(*r.value, *out.results[0].value);
}

TEST(Dvrf, DegenerateInputAbortsEveryone) {
  const auto ck = pc().commit_key();
  const Field& f = *ck.field;
  SimNetwork net;
  Rng rng = Rng::from_u64(23);
  ProtocolConfig cfg;
  Scalar sk = f.random(rng);
  auto sks = trusted_sharing(ck, cfg, sk, rng);
  auto xs = trusted_sharing(ck, cfg, -sk, rng);
  const transport::NodeId client = transport::kFirstClientId;
  auto members = sae::testing::ids(3);
  members.push_back(client);
  auto out = run_session<bool>(net, "degenerate", members, [&](transport::Endpoint& ep) {
    if (ep.self() == client) {
      receive_dvrf(cfg, ep, true);
      return true;
    }
    Rng r = Rng::from_u64(ep.self());
    vss::MpcContext<G1> ctx(ck, cfg, ep, r);
    dvrf(ctx, sks[ep.self() - 1], xs[ep.self() - 1], true, vss::Recipient::to_client(client));
    return true;
  });
  for (const auto& r : out) {
    ASSERT_TRUE(r.error);
    EXPECT_EQ(error_code(r.error), Errc::kDegenerateInput);
  }
}

// The opened t2 = (x + SK) * blind must look uniform: no repeats across runs
// with a fixed input.
TEST(Dvrf, OpenedProductDoesNotRepeat) {
  const auto ck = pc().commit_key();
  const Field& f = *ck.field;
  SimNetwork net;
  Rng rng = Rng::from_u64(24);
  ProtocolConfig cfg;
  auto sks = trusted_sharing(ck, cfg, f.random(rng), rng);
  auto xs = trusted_sharing(ck, cfg, f.from_u64(42), rng);
  constexpr int kRuns = 1000;
  auto out = run_mpc<G1, std::vector<Bytes>>(net, ck, cfg, "t2", 2, {}, [&](vss::MpcContext<G1>& ctx) {
    std::vector<Bytes> seen;
    for (int i = 0; i < kRuns; ++i) {
      DvrfTrace tr;
      dvrf_exp(ctx, sks[ctx.index() - 1], xs[ctx.index() - 1], ck.g, vss::Recipient::escrows(), &tr);
      seen.push_back(tr.t2.to_bytes());
    }
    return seen;
  });
  ASSERT_TRUE(out.results[0].ok());
  const auto& seen = *out.results[0].value;
  EXPECT_EQ(std::set<Bytes>(seen.begin(), seen.end()).size(), static_cast<size_t>(kRuns));
  // Top bit of a uniform 255-bit value: roughly balanced.
  int high = 0;
  for (const Bytes& b : seen) high += (b[0] & 0x40) ? 1 : 0;
  EXPECT_GT(high, 400);
  EXPECT_LT(high, 600);
}

}  // namespace
}  // namespace sae::dvrf
