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

#include "sae/dvrf/dvrf.hpp"

#include "sae/errors.hpp"

namespace sae::dvrf {

namespace {

constexpr std::string_view kDegenerateMsg = "dvrf/degenerate";

}  // namespace

template <typename G, typename B>
std::optional<B> dvrf_exp(vss::MpcContext<G>& ctx, const vss::SharedScalar<G>& sk,
                          const vss::SharedScalar<G>& x, const B& base, vss::Recipient to,
                          DvrfTrace* trace) {
  auto t1 = vss::add_local(sk, x);
  auto blind = vss::random_coin_toss(ctx);
  Scalar t2 = vss::open(ctx, vss::multiply(ctx, t1, blind));
  if (trace != nullptr) trace->t2 = t2;
  if (t2.is_zero()) {
    // Keep the round schedule so a client recipient learns why.
    if (!to.all_escrows) ctx.send(to.client, kDegenerateMsg, {});
    ctx.end_round();
    throw Error(Errc::kDegenerateInput, "x + SK = 0 in session " + ctx.endpoint().session());
  }
  auto exp = vss::scale_local(t2.inverse(), blind);
  return vss::public_exponentiate(ctx, base, exp, to);
}

std::optional<VrfOutput> dvrf(vss::MpcContext<G1>& ctx, const vss::SharedScalar<G1>& sk,
                              const vss::SharedScalar<G1>& x, bool flag_proof, vss::Recipient to,
                              DvrfTrace* trace) {
  const auto& pc = PairingContext::get();
  if (flag_proof) {
    auto pi = dvrf_exp(ctx, sk, x, pc.g, to, trace);
    if (!pi) return std::nullopt;
    return VrfOutput{vrf_value(*pi), *pi};
  }
  auto v = dvrf_exp(ctx, sk, x, pc.gt, to, trace);
  if (!v) return std::nullopt;
  return VrfOutput{*v, std::nullopt};
}

VrfOutput receive_dvrf(const ProtocolConfig& cfg, transport::Endpoint& ep, bool flag_proof) {
  const auto& pc = PairingContext::get();
  for (uint32_t r = 0; r + 1 < kDvrfRounds; ++r) ep.end_round();
  transport::Inbox in = ep.end_round();
  uint32_t degenerate = 0;
  for (transport::NodeId j : vss::escrow_ids(cfg)) {
    if (in.get(j, kDegenerateMsg) != nullptr) ++degenerate;
  }
  if (degenerate >= cfg.f + 1) throw Error(Errc::kDegenerateInput, "escrows report x + SK = 0");
  if (flag_proof) {
    G1 pi = vss::combine_exponentiation(pc.commit_key(), cfg, ep.session(), in, pc.g);
    return VrfOutput{vrf_value(pi), pi};
  }
  return VrfOutput{vss::combine_exponentiation(pc.commit_key(), cfg, ep.session(), in, pc.gt),
                   std::nullopt};
}

bool verify_vrf(const VrfPublicKey& pk, const G1& proof, const Scalar& x) {
  const auto& pc = PairingContext::get();
  if (proof.is_identity()) return false;
  return pairing(proof, pc.g2.pow(x) * pk) == pc.gt;
}

Gt vrf_value(const G1& proof) { return pairing(proof, PairingContext::get().g2); }

VrfOutput reference_vrf(const Scalar& sk, const Scalar& x) {
  Scalar s = x + sk;
  if (s.is_zero()) throw Error(Errc::kDegenerateInput, "x + sk = 0");
  const auto& pc = PairingContext::get();
  Scalar inv = s.inverse();
  return VrfOutput{pc.gt.pow(inv), pc.g.pow(inv)};
}

template std::optional<G1> dvrf_exp(vss::MpcContext<G1>&, const vss::SharedScalar<G1>&,
                                    const vss::SharedScalar<G1>&, const G1&, vss::Recipient, DvrfTrace*);
template std::optional<Gt> dvrf_exp(vss::MpcContext<G1>&, const vss::SharedScalar<G1>&,
                                    const vss::SharedScalar<G1>&, const Gt&, vss::Recipient, DvrfTrace*);
template std::optional<ToyElem> dvrf_exp(vss::MpcContext<ToyElem>&, const vss::SharedScalar<ToyElem>&,
                                         const vss::SharedScalar<ToyElem>&, const ToyElem&,
                                         vss::Recipient, DvrfTrace*);

}  // namespace sae::dvrf
