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

#ifndef SAE_TESTS_COMMON_MPC_RUNNER_HPP_
#define SAE_TESTS_COMMON_MPC_RUNNER_HPP_

#include <map>
#include <string>
#include <vector>

#include "common/runner.hpp"
#include "sae/transport/sim.hpp"
#include "sae/vss/mpc.hpp"

namespace sae::testing {

template <typename T>
struct MpcOutcome {
  std::vector<PartyResult<T>> results;             // indexed by escrow - 1
  std::vector<std::vector<AbortReport>> reports;   // indexed by escrow - 1
};

// Runs fn(ctx) at escrows 1..n in one session. `behaviors` maps indices to
// corruptions; the rest are honest.
template <typename G, typename T, typename Fn>
MpcOutcome<T> run_mpc(transport::Network& net, const CommitKey<G>& ck, const ProtocolConfig& cfg,
                      const std::string& session, uint64_t seed,
                      const std::map<uint32_t, vss::Behavior>& behaviors, Fn fn) {
  MpcOutcome<T> out;
  out.reports.resize(cfg.n);
  out.results = run_session<T>(net, session, ids(cfg.n), [&](transport::Endpoint& ep) {
    Rng rng = Rng::from_u64(seed).fork("party" + std::to_string(ep.self()));
    auto it = behaviors.find(ep.self());
    vss::MpcContext<G> ctx(ck, cfg, ep, rng, it == behaviors.end() ? vss::Behavior::kHonest : it->second);
    struct Flush {
      vss::MpcContext<G>& c;
      std::vector<AbortReport>& dst;
      ~Flush() { dst = c.reports(); }
    } flush{ctx, out.reports[ep.self() - 1]};
    return fn(ctx);
  });
  return out;
}

// Trusted dealing of a known secret, handed out as per-party views.
template <typename G>
std::vector<vss::SharedScalar<G>> trusted_sharing(const CommitKey<G>& ck, const ProtocolConfig& cfg,
                                                  const Scalar& secret, Rng& rng) {
  auto d = vss::deal_vss(ck, secret, cfg, vss::CommitMode::kPedersen, rng);
  std::vector<vss::SharedScalar<G>> out;
  for (const auto& s : d.shares) out.push_back({s, d.commitments});
  return out;
}

}  // namespace sae::testing

#endif  // SAE_TESTS_COMMON_MPC_RUNNER_HPP_
