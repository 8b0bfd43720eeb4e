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

#ifndef SAE_HARNESS_CLUSTER_HPP_
#define SAE_HARNESS_CLUSTER_HPP_

#include <chrono>
#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sae/client/client.hpp"
#include "sae/escrow/escrow.hpp"
#include "sae/transport/board.hpp"
#include "sae/transport/sim.hpp"

namespace sae::harness {

// Supplies each node with its network and board handles.
class TransportFactory {
 public:
  virtual ~TransportFactory() = default;
  // `cert` is set for clients, null for escrows.
  virtual transport::Network& network(transport::NodeId node, const crypto::KeyPair& key,
                                      const crypto::Certificate* cert) = 0;
  virtual transport::BulletinBoard& board(transport::NodeId node, const crypto::KeyPair& key,
                                          const crypto::Certificate* cert) = 0;
  // Called before any node is created.
  virtual void set_directory(const escrow::Directory&) {}
  // Called once all escrows exist, before initialization.
  virtual void start() {}
};

class SimTransport : public TransportFactory {
 public:
  explicit SimTransport(transport::SimNetwork::Options opts = {}) : net_(opts) {}

  transport::Network& network(transport::NodeId, const crypto::KeyPair&, const crypto::Certificate*) override {
    return net_;
  }
  transport::BulletinBoard& board(transport::NodeId, const crypto::KeyPair&, const crypto::Certificate*) override {
    return board_;
  }
  transport::SimNetwork& sim() { return net_; }
  transport::InMemoryBoard& memory_board() { return board_; }

 private:
  transport::SimNetwork net_;
  transport::InMemoryBoard board_;
};

struct ClusterOptions {
  ProtocolConfig cfg;
  uint64_t seed = 1;
  std::map<uint32_t, vss::Behavior> behaviors;
  std::string state_dir;  // empty: no persistence
  std::chrono::milliseconds step_timeout{120000};
  int64_t quota_period_ms = 24LL * 3600 * 1000;
};

struct ClusterKeys {
  crypto::CertificateAuthority ca;
  std::vector<crypto::KeyPair> escrows;
  escrow::Directory directory;
};

struct StepResult {
  bool ok = true;
  Errc code = Errc::kInvalidConfig;
  std::string message;
  double ms = 0;
};

// A filing as the harness knows it; escrows never see the label.
struct FiledAllegation {
  std::string label;
  std::string identity;
  size_t key_index = 0;
  bucketing::AllegationId id;
  client::Meta meta;
  Bytes text;
  uint32_t t = 0;
  std::optional<Errc> rejected;  // as agreed by the honest escrows
};

class Cluster {
 public:
  explicit Cluster(ClusterOptions options, std::unique_ptr<TransportFactory> transport = nullptr);
  ~Cluster();

  // Joint key generation at every escrow.
  void initialize();

  StepResult register_user(const std::string& identity, uint32_t count);
  // Files with the identity's key `key_index` (nullopt: first unused key),
  // then lets every escrow process the filing.
  StepResult file(const std::string& label, const std::string& identity, std::optional<size_t> key_index,
                  const client::Meta& meta, ByteView text, uint32_t t);
  // Posts raw bytes anonymously, then lets every escrow process them.
  StepResult post_anonymous(Bytes payload);

  const ProtocolConfig& config() const { return options_.cfg; }
  const ClusterKeys& keys() const { return keys_; }
  const G2& mac_key() const { return mac_key_; }
  std::vector<uint32_t> honest() const;
  escrow::Escrow& escrow(uint32_t j) { return *escrows_.at(j - 1); }
  const escrow::Escrow& escrow(uint32_t j) const { return *escrows_.at(j - 1); }
  client::Client& client(const std::string& identity);
  bool has_client(const std::string& identity) const { return clients_.count(identity) > 0; }
  TransportFactory& transport() { return *transport_; }
  const std::vector<FiledAllegation>& filed() const { return filed_; }
  const FiledAllegation* find_filed(const bucketing::AllegationId& id) const;

  // Labels revealed at escrow j.
  std::set<std::string> revealed_labels(uint32_t j) const;
  // Culprits named by any honest escrow.
  std::set<uint32_t> named_culprits() const;
  std::vector<AbortReport> honest_reports() const;
  // Honest escrows hold byte-identical buckets and identities encodings.
  bool converged() const;
  // Errors thrown out of escrow threads, by escrow index.
  const std::map<uint32_t, std::string>& escrow_errors() const { return escrow_errors_; }

  // Registration DVRFs plus matching and reveal DVRFs charged to the
  // identity's allegations, as counted by the first honest escrow.
  double dvrf_for_user(const std::string& identity) const;

 private:
  void run_escrows(const std::function<void(escrow::Escrow&)>& fn,
                   const std::function<void()>& alongside = {});
  void process_through(uint64_t last, const std::function<void()>& alongside = {});
  std::optional<Errc> agreed_rejection(uint64_t seq) const;

  ClusterOptions options_;
  std::unique_ptr<TransportFactory> transport_;
  Rng rng_;
  ClusterKeys keys_;
  std::vector<std::unique_ptr<escrow::Escrow>> escrows_;
  std::map<std::string, std::unique_ptr<client::Client>> clients_;
  std::map<std::string, std::unique_ptr<transport::AnonChannel>> channels_;
  transport::NodeId next_client_ = transport::kFirstClientId;
  uint64_t board_len_ = 0;
  G2 mac_key_;
  std::vector<FiledAllegation> filed_;
  std::map<uint32_t, std::string> escrow_errors_;
};

}  // namespace sae::harness

#endif  // SAE_HARNESS_CLUSTER_HPP_
