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

#ifndef SAE_DVRF_DVRF_HPP_
#define SAE_DVRF_DVRF_HPP_

#include <optional>

#include "sae/algebra/groups.hpp"
#include "sae/vss/mpc.hpp"

namespace sae::dvrf {

// F_SK(x) = gt^{1/(x+SK)} with proof pi = g^{1/(x+SK)}. Proofs are in G1 and
// public keys g2^SK in G2, so pairing(pi, g2) = value.
struct VrfOutput {
  Gt value;
  std::optional<G1> proof;

  bool operator==(const VrfOutput&) const = default;
};

using VrfPublicKey = G2;

// Rounds consumed by one dvrf invocation, for every participant.
inline constexpr uint32_t kDvrfRounds =
    vss::kCoinTossRounds + vss::kMultiplyRounds + vss::kOpenRounds + vss::kExponentiateRounds;

// Test hook exposing the one value dvrf makes public besides its result.
struct DvrfTrace {
  Scalar t2;
};

// base^{1/(x+SK)} over shared SK and x. Throws kDegenerateInput when
// x + SK = 0; a client recipient is told so in the final round.
template <typename G, typename B>
std::optional<B> dvrf_exp(vss::MpcContext<G>& ctx, const vss::SharedScalar<G>& sk,
                          const vss::SharedScalar<G>& x, const B& base, vss::Recipient to,
                          DvrfTrace* trace = nullptr);

// Escrow side of the real instantiation. Returns nullopt when the recipient
// is a client.
std::optional<VrfOutput> dvrf(vss::MpcContext<G1>& ctx, const vss::SharedScalar<G1>& sk,
                              const vss::SharedScalar<G1>& x, bool flag_proof, vss::Recipient to,
                              DvrfTrace* trace = nullptr);

// Client side: idles through the escrow-only rounds and combines the final
// contributions. Throws kMacVerifyFailed naming a misbehaving escrow, or
// kDegenerateInput.
VrfOutput receive_dvrf(const ProtocolConfig& cfg, transport::Endpoint& ep, bool flag_proof);

// pairing(pi, g2^x * pk) == gt.
bool verify_vrf(const VrfPublicKey& pk, const G1& proof, const Scalar& x);
Gt vrf_value(const G1& proof);

// Single-party evaluation. Throws kDegenerateInput when x + sk = 0.
VrfOutput reference_vrf(const Scalar& sk, const Scalar& x);

}  // namespace sae::dvrf

#endif  // SAE_DVRF_DVRF_HPP_
