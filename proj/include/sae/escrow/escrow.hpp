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

#ifndef SAE_ESCROW_ESCROW_HPP_
#define SAE_ESCROW_ESCROW_HPP_

#include <atomic>
#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sae/bucketing/bucketing.hpp"
#include "sae/dvrf/dvrf.hpp"
#include "sae/escrow/store.hpp"
#include "sae/escrow/wire.hpp"
#include "sae/transport/board.hpp"
#include "sae/transport/network.hpp"
#include "sae/vss/mpc.hpp"

namespace sae::escrow {

using Shared = vss::SharedScalar<G1>;

struct EscrowKeyState {
  Shared sk_i;  // MAC key
  Shared sk_r;  // reveal key
  std::map<uint32_t, Shared> bucket_keys;  // created on first use
  G2 pk_i;
};

struct AllegationRecord {
  uint32_t t = 0;
  G1 pk;
  Bytes ciphertext;
  Shared m;
  Shared k;
  uint64_t seq = 0;  // board entry that filed it
};

struct RevealedAllegation {
  uint32_t t = 0;
  Bytes text;
  std::string identity;
  bucketing::AllegationId id;
  uint64_t seq = 0;
  bool decrypt_ok = true;

  bool operator==(const RevealedAllegation&) const = default;
};

// Outcome of one board entry at one escrow.
struct Rejection {
  uint64_t seq = 0;
  EntryKind kind = EntryKind::kRegister;
  Errc code = Errc::kInvalidConfig;
};

struct DvrfCounters {
  uint64_t registration = 0;
  uint64_t matching = 0;
  uint64_t reveal = 0;

  uint64_t total() const { return registration + matching + reveal; }
};

struct EscrowMetrics {
  DvrfCounters dvrf;
  // Registration DVRFs charged to a registering identity.
  std::map<std::string, uint64_t> dvrf_by_identity;
  // Matching and reveal DVRFs charged to allegations; a collection move is
  // split evenly among the collection's members.
  std::map<bucketing::AllegationId, double> dvrf_by_allegation;
  uint64_t mpc_sessions = 0;
  uint64_t coin_tosses = 0;
  uint64_t entries_processed = 0;
};

struct EscrowOptions {
  vss::Behavior behavior = vss::Behavior::kHonest;
  std::string store_path;       // empty: no persistence
  std::string reveal_log_path;  // empty: no log file
  int64_t quota_period_ms = 24LL * 3600 * 1000;
};

class Escrow {
 public:
  // Reloads persisted state from options.store_path when present.
  Escrow(uint32_t index, crypto::KeyPair identity, Directory directory, ProtocolConfig cfg,
         transport::Network& net, transport::BulletinBoard& board, Rng rng, EscrowOptions options = {});
  ~Escrow();

  // Joint key generation with every other escrow, then announces PK_I on the
  // board. A no-op when the keys were restored from the store.
  void initialize();
  bool initialized() const { return keys_.has_value(); }

  // Processes every board entry with seq <= last, in order, waiting for
  // entries that are not yet visible. Throws kTimeout.
  void process_through(uint64_t last, std::chrono::milliseconds timeout);
  // Processes whatever is visible now; returns the number of entries handled.
  size_t sync();
  // sync() until `stop` is set.
  void run(const std::atomic<bool>& stop, std::chrono::milliseconds poll = std::chrono::milliseconds(50));

  uint32_t index() const { return index_; }
  const ProtocolConfig& config() const { return cfg_; }
  const EscrowKeyState& keys() const;
  uint64_t cursor() const { return cursor_; }
  const bucketing::BucketMap& buckets() const { return buckets_; }
  const std::map<Bytes, std::string>& identities() const { return identities_; }
  const std::map<bucketing::AllegationId, AllegationRecord>& allegations() const { return allegations_; }
  const std::vector<RevealedAllegation>& reveals() const { return reveals_; }
  const std::vector<Rejection>& rejections() const { return rejections_; }
  const std::vector<AbortReport>& reports() const { return reports_; }
  const EscrowMetrics& metrics() const { return metrics_; }

  Bytes encode_identities() const;
  // Hash of the canonical buckets and identities encodings.
  Bytes state_digest() const;

 private:
  struct Session;

  void handle(const transport::BoardEntry& entry);
  void handle_register(const transport::BoardEntry& entry, ByteView body);
  void handle_filing(const transport::BoardEntry& entry, ByteView body);
  std::optional<Errc> check_registration(const transport::BoardEntry& entry, const RegisterRequest& req) const;
  std::optional<Errc> check_filing(const FilingPackage& pkg) const;

  std::optional<vss::Share> own_share(const FilingPackage& pkg, vss::Share* k_out) const;
  bool vote_on_filing(vss::MpcContext<G1>& ctx, const FilingPackage& pkg, bool mine_ok);
  const Shared& bucket_key(vss::MpcContext<G1>& ctx, uint32_t i);
  bucketing::MatchTag match_tag(vss::MpcContext<G1>& ctx, uint32_t bucket, const Shared& m);
  void reveal_new(vss::MpcContext<G1>& ctx, uint64_t seq);

  void reject(uint64_t seq, EntryKind kind, Errc code);
  void absorb_reports(const vss::MpcContext<G1>& ctx);
  void advance_cursor(uint64_t next);
  void restore();
  void persist(uint8_t type, const Bytes& payload);

  uint32_t index_;
  crypto::KeyPair identity_;
  Directory directory_;
  ProtocolConfig cfg_;
  transport::Network& net_;
  transport::BulletinBoard& board_;
  Rng rng_;
  EscrowOptions options_;
  CommitKey<G1> ck_;

  std::optional<EscrowKeyState> keys_;
  std::map<Bytes, std::string> identities_;
  std::map<std::pair<std::string, int64_t>, uint32_t> quota_;
  std::map<bucketing::AllegationId, AllegationRecord> allegations_;
  bucketing::BucketMap buckets_;
  std::set<bucketing::AllegationId> revealed_done_;
  uint64_t cursor_ = 0;

  std::vector<RevealedAllegation> reveals_;
  std::vector<Rejection> rejections_;
  std::vector<AbortReport> reports_;
  EscrowMetrics metrics_;
  std::unique_ptr<RecordStore> store_;
};

// Identity-map key: hash of the reveal-key DVRF output.
Bytes identity_key(const Gt& r);

Bytes encode_record(const AllegationRecord& r);
AllegationRecord decode_record(ByteView b, uint32_t degree);
std::string reveal_json(const RevealedAllegation& r);

}  // namespace sae::escrow

#endif  // SAE_ESCROW_ESCROW_HPP_
