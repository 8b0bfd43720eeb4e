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

#ifndef SAE_VSS_MPC_HPP_
#define SAE_VSS_MPC_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sae/algebra/config.hpp"
#include "sae/algebra/groups.hpp"
#include "sae/algebra/rng.hpp"
#include "sae/errors.hpp"
#include "sae/transport/network.hpp"
#include "sae/vss/vss.hpp"

namespace sae::vss {

// Deviations a corrupted escrow can be configured with. Each one exercises a
// distinct abort path.
enum class Behavior : uint8_t {
  kHonest,
  kWrongMultiplyShare,       // reshares x_j*y_j + 1 in multiply
  kSilentDrop,               // sends nothing but keeps closing rounds
  kBadDealing,               // hands one peer a wrong share, then "reveals" it
  kBadExponentContribution,  // returns base^{x_j+1} in public_exponentiate
};

std::string_view behavior_name(Behavior b);
// Throws kInvalidConfig on unknown names.
Behavior parse_behavior(std::string_view name);

// Rounds consumed by each protocol. Fixed so that parties who only observe a
// session (e.g. a client waiting for its DVRF result) stay in lockstep.
inline constexpr uint32_t kVssRounds = 3;
inline constexpr uint32_t kCoinTossRounds = kVssRounds;
inline constexpr uint32_t kMultiplyRounds = kVssRounds;
inline constexpr uint32_t kOpenRounds = 1;
inline constexpr uint32_t kExponentiateRounds = 1;

// Escrows are share indices 1..n and node ids 1..n.
std::vector<transport::NodeId> escrow_ids(const ProtocolConfig& cfg);

// Per-party, per-session MPC state. Collects non-fatal AbortReports; fatal
// misbehaviour is thrown as IdentifiableAbort.
template <typename G>
class MpcContext {
 public:
  MpcContext(const CommitKey<G>& ck, const ProtocolConfig& cfg, transport::Endpoint& ep,
             Rng& rng, Behavior behavior = Behavior::kHonest);

  const CommitKey<G>& ck() const { return ck_; }
  const ProtocolConfig& cfg() const { return cfg_; }
  const Field& field() const { return *ck_.field; }
  transport::Endpoint& endpoint() { return ep_; }
  uint32_t index() const { return ep_.self(); }
  Rng& rng() { return rng_; }
  Behavior behavior() const { return behavior_; }
  const std::vector<transport::NodeId>& escrows() const { return escrows_; }

  // Suppressed entirely under kSilentDrop.
  void send(transport::NodeId to, std::string_view type, const Bytes& body);
  void send_escrows(std::string_view type, const Bytes& body);
  // Throws kTimeout if any escrow missed the round deadline.
  transport::Inbox end_round();

  void report(uint32_t culprit, std::string_view phase);
  const std::vector<AbortReport>& reports() const { return reports_; }
  uint32_t rounds() const { return rounds_; }

 private:
  CommitKey<G> ck_;
  ProtocolConfig cfg_;
  transport::Endpoint& ep_;
  Rng& rng_;
  Behavior behavior_;
  std::vector<transport::NodeId> escrows_;
  std::vector<AbortReport> reports_;
  uint32_t rounds_ = 0;
};

// Proof that a Pedersen commitment C = g^x h^r and Y = base^x share x.
template <typename G, typename B>
struct DleqProof {
  G t1;
  B t2;
  Scalar z1, z2;

  Bytes encode() const;
  static DleqProof decode(const G& gproto, const B& bproto, const Field& f, ByteView b);
};

template <typename G, typename B>
DleqProof<G, B> prove_dleq(const CommitKey<G>& ck, const B& base, const G& c, const B& y,
                           const Scalar& x, const Scalar& r, ByteView context, Rng& rng);
template <typename G, typename B>
bool verify_dleq(const CommitKey<G>& ck, const B& base, const G& c, const B& y,
                 const DleqProof<G, B>& proof, ByteView context);

// Proof that D = g^{xy} h^s where A = g^x h^a and B = g^y h^b are public:
// knowledge of (x, a, z) with A = g^x h^a and D = B^x h^z.
template <typename G>
struct ProductProof {
  G t1, t2;
  Scalar zx, za, zz;

  Bytes encode() const;
  static ProductProof decode(const G& proto, const Field& f, ByteView b);
};

template <typename G>
ProductProof<G> prove_product(const CommitKey<G>& ck, const G& a, const G& b, const G& d,
                              const Scalar& x, const Scalar& ra, const Scalar& z, ByteView context,
                              Rng& rng);
template <typename G>
bool verify_product(const CommitKey<G>& ck, const G& a, const G& b, const G& d,
                    const ProductProof<G>& proof, ByteView context);

// Outcome of one deal/complain/reveal exchange.
template <typename G>
struct VssExchange {
  std::map<transport::NodeId, SharedScalar<G>> received;  // only when self is a receiver
  std::map<transport::NodeId, Commitments<G>> commitments;
  std::map<transport::NodeId, Bytes> extra;
  std::set<transport::NodeId> disqualified;
};

// Generic three-round verifiable dealing among arbitrary dealers/receivers.
// Every party in `audience` observes commitments, complaints and reveals.
// `check_extra` validates the dealer's public side payload.
template <typename G>
struct VssExchangeSpec {
  std::string tag;
  uint32_t degree = 1;
  std::vector<transport::NodeId> dealers;
  std::vector<transport::NodeId> receivers;
  std::vector<transport::NodeId> audience;
  const Dealing<G>* mine = nullptr;  // required when self is a dealer
  Bytes my_extra;
  std::function<bool(transport::NodeId dealer, const Commitments<G>&, ByteView extra)> check_extra;
  Behavior behavior = Behavior::kHonest;
  // Defaults to Endpoint::end_round.
  std::function<transport::Inbox()> close_round;
};

template <typename G>
VssExchange<G> run_vss_exchange(const CommitKey<G>& ck, transport::Endpoint& ep,
                                const VssExchangeSpec<G>& spec);

// Joint uniform sharing: the sum of every qualified escrow's dealing.
// Disqualified dealers are reported; fewer than f+1 qualified aborts.
template <typename G>
SharedScalar<G> random_coin_toss(MpcContext<G>& ctx);

// Degree-f sharing of x*y via verified resharing of local products. Any
// misbehaving resharer is fatal.
template <typename G>
SharedScalar<G> multiply(MpcContext<G>& ctx, const SharedScalar<G>& x, const SharedScalar<G>& y);

// Publicly reconstructs a sharing. Invalid or missing shares are reported and
// skipped.
template <typename G>
Scalar open(MpcContext<G>& ctx, const SharedScalar<G>& x);

struct Recipient {
  bool all_escrows = true;
  transport::NodeId client = 0;

  static Recipient escrows() { return {true, 0}; }
  static Recipient to_client(transport::NodeId id) { return {false, id}; }
};

// base^x to the recipients; escrows learn nothing when the recipient is a
// client (returns nullopt). Bad contributions are reported and excluded.
template <typename G, typename B>
std::optional<B> public_exponentiate(MpcContext<G>& ctx, const B& base, const SharedScalar<G>& x,
                                     Recipient to);

// Client half of public_exponentiate: consumes one round. Any invalid or
// missing contribution throws kMacVerifyFailed naming the escrow.
template <typename G, typename B>
B receive_exponentiation(const CommitKey<G>& ck, const ProtocolConfig& cfg,
                         transport::Endpoint& ep, const B& base);
// The same, over an already collected inbox of `session`.
template <typename G, typename B>
B combine_exponentiation(const CommitKey<G>& ck, const ProtocolConfig& cfg, const std::string& session,
                         const transport::Inbox& in, const B& base);

}  // namespace sae::vss

#endif  // SAE_VSS_MPC_HPP_
