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

#include "sae/harness/cluster.hpp"

#include <filesystem>
#include <thread>

#include "sae/errors.hpp"

namespace sae::harness {

using transport::NodeId;

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

ClusterKeys make_keys(const ProtocolConfig& cfg, Rng& rng) {
  ClusterKeys k{crypto::CertificateAuthority::generate(rng), {}, {}};
  k.directory.ca = k.ca.public_key();
  for (uint32_t j = 1; j <= cfg.n; ++j) {
    k.escrows.push_back(crypto::KeyPair::generate(rng));
    k.directory.escrows.push_back(k.escrows.back().pk);
  }
  return k;
}

}  // namespace

Cluster::Cluster(ClusterOptions options, std::unique_ptr<TransportFactory> transport)
    : options_(std::move(options)),
      transport_(transport ? std::move(transport) : std::make_unique<SimTransport>()),
      rng_(Rng::from_u64(options_.seed)),
      keys_(make_keys(options_.cfg, rng_)) {
  options_.cfg.validate();
  if (!options_.state_dir.empty()) std::filesystem::create_directories(options_.state_dir);
  transport_->set_directory(keys_.directory);
  for (uint32_t j = 1; j <= options_.cfg.n; ++j) {
    escrow::EscrowOptions eo;
    auto b = options_.behaviors.find(j);
    if (b != options_.behaviors.end()) eo.behavior = b->second;
    eo.quota_period_ms = options_.quota_period_ms;
    if (!options_.state_dir.empty()) {
      eo.store_path = options_.state_dir + "/escrow" + std::to_string(j) + ".store";
      eo.reveal_log_path = options_.state_dir + "/escrow" + std::to_string(j) + ".reveals.jsonl";
    }
    const crypto::KeyPair& key = keys_.escrows[j - 1];
    escrows_.push_back(std::make_unique<escrow::Escrow>(
        j, key, keys_.directory, options_.cfg, transport_->network(j, key, nullptr),
        transport_->board(j, key, nullptr), rng_.fork("escrow" + std::to_string(j)), eo));
  }
  transport_->start();
}

Cluster::~Cluster() = default;

std::vector<uint32_t> Cluster::honest() const {
  std::vector<uint32_t> out;
  for (uint32_t j = 1; j <= options_.cfg.n; ++j) {
    auto b = options_.behaviors.find(j);
    if (b == options_.behaviors.end() || b->second == vss::Behavior::kHonest) out.push_back(j);
  }
  return out;
}

void Cluster::run_escrows(const std::function<void(escrow::Escrow&)>& fn, const std::function<void()>& alongside) {
  std::vector<std::thread> threads;
  std::vector<std::string> errors(escrows_.size());
  for (size_t i = 0; i < escrows_.size(); ++i) {
    threads.emplace_back([&, i] {
      try {
        fn(*escrows_[i]);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    });
  }
  std::exception_ptr side_error;
  if (alongside) {
    try {
      alongside();
    } catch (...) {
      side_error = std::current_exception();
    }
  }
  for (auto& t : threads) t.join();
  for (size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i].empty()) escrow_errors_[static_cast<uint32_t>(i + 1)] = errors[i];
  }
  if (side_error) std::rethrow_exception(side_error);
}

void Cluster::process_through(uint64_t last, const std::function<void()>& alongside) {
  run_escrows([&](escrow::Escrow& e) { e.process_through(last, options_.step_timeout); }, alongside);
}

void Cluster::initialize() {
  run_escrows([](escrow::Escrow& e) { e.initialize(); });
  for (uint32_t j : honest()) {
    auto it = escrow_errors_.find(j);
    if (it != escrow_errors_.end()) throw Error(Errc::kIdentifiableAbort, "escrow " + std::to_string(j) + ": " + it->second);
  }
  auto& board = transport_->board(0, keys_.escrows[0], nullptr);
  auto entries = board.read(0);
  board_len_ = entries.size();
  auto key = escrow::agreed_mac_key(entries, keys_.directory, options_.cfg);
  if (!key) throw Error(Errc::kTimeout, "escrows did not agree on PK_I");
  mac_key_ = *key;
  // Announcements are board entries too; let every escrow move past them.
  if (board_len_ > 0) process_through(board_len_ - 1);
}

client::Client& Cluster::client(const std::string& identity) {
  auto it = clients_.find(identity);
  if (it != clients_.end()) return *it->second;
  client::ClientIdentity id{identity, crypto::KeyPair::generate(rng_), {}};
  id.cert = keys_.ca.issue(identity, id.key.pk, rng_);
  NodeId node = next_client_++;
  auto c = std::make_unique<client::Client>(id, keys_.directory, options_.cfg, node, rng_.fork("client" + identity));
  auto& board = transport_->board(node, id.key, &id.cert);
  channels_[identity] = std::make_unique<transport::AnonChannel>(board, rng_.next_u64());
  return *clients_.emplace(identity, std::move(c)).first->second;
}

std::optional<Errc> Cluster::agreed_rejection(uint64_t seq) const {
  std::map<Errc, uint32_t> votes;
  for (uint32_t j : honest()) {
    for (const auto& r : escrow(j).rejections()) {
      if (r.seq == seq) ++votes[r.code];
    }
  }
  for (const auto& [code, v] : votes) {
    if (v >= options_.cfg.f + 1) return code;
  }
  return std::nullopt;
}

StepResult Cluster::register_user(const std::string& identity, uint32_t count) {
  client::Client& c = client(identity);
  StepResult out;
  auto start = std::chrono::steady_clock::now();
  if (count == 0) return out;
  const uint64_t seq = board_len_++;
  auto& board = transport_->board(c.node(), c.identity().key, &c.identity().cert);
  auto& net = transport_->network(c.node(), c.identity().key, &c.identity().cert);
  try {
    process_through(seq, [&] { c.register_keys(board, net, count, mac_key_); });
  } catch (const Error& e) {
    out.ok = false;
    out.code = e.code();
    out.message = e.what();
  }
  // The escrows' verdict is authoritative; the client only sees its symptom.
  if (auto code = agreed_rejection(seq)) {
    out.ok = false;
    out.code = *code;
  }
  out.ms = ms_since(start);
  return out;
}

StepResult Cluster::file(const std::string& label, const std::string& identity, std::optional<size_t> key_index,
                         const client::Meta& meta, ByteView text, uint32_t t) {
  client::Client& c = client(identity);
  StepResult out;
  auto start = std::chrono::steady_clock::now();
  size_t idx = key_index ? *key_index : c.next_unused();
  FiledAllegation fa{label, identity, idx, {}, meta, Bytes(text.begin(), text.end()), t, std::nullopt};
  try {
    escrow::FilingPackage pkg = c.file(idx, meta, text, t, *channels_.at(identity));
    fa.id = pkg.id();
  } catch (const Error& e) {
    out.ok = false;
    out.code = e.code();
    out.message = e.what();
    out.ms = ms_since(start);
    return out;
  }
  channels_.at(identity)->flush();
  const uint64_t seq = board_len_++;
  process_through(seq);
  fa.rejected = agreed_rejection(seq);
  if (fa.rejected) {
    out.ok = false;
    out.code = *fa.rejected;
    out.message = std::string(errc_name(*fa.rejected));
  }
  filed_.push_back(std::move(fa));
  out.ms = ms_since(start);
  return out;
}

StepResult Cluster::post_anonymous(Bytes payload) {
  StepResult out;
  auto start = std::chrono::steady_clock::now();
  transport_->board(0, keys_.escrows[0], nullptr).post(std::move(payload), std::nullopt);
  const uint64_t seq = board_len_++;
  process_through(seq);
  if (auto code = agreed_rejection(seq)) {
    out.ok = false;
    out.code = *code;
    out.message = std::string(errc_name(*code));
  }
  out.ms = ms_since(start);
  return out;
}

const FiledAllegation* Cluster::find_filed(const bucketing::AllegationId& id) const {
  for (const auto& f : filed_) {
    if (f.id == id) return &f;
  }
  return nullptr;
}

std::set<std::string> Cluster::revealed_labels(uint32_t j) const {
  std::set<std::string> out;
  for (const auto& r : escrow(j).reveals()) {
    const FiledAllegation* f = find_filed(r.id);
    out.insert(f ? f->label : "?" + to_hex(r.id));
  }
  return out;
}

std::vector<AbortReport> Cluster::honest_reports() const {
  std::vector<AbortReport> out;
  for (uint32_t j : honest()) {
    const auto& r = escrow(j).reports();
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

std::set<uint32_t> Cluster::named_culprits() const {
  std::set<uint32_t> out;
  for (const auto& r : honest_reports()) out.insert(r.culprit);
  return out;
}

bool Cluster::converged() const {
  auto h = honest();
  if (h.empty()) return true;
  const Bytes b0 = escrow(h[0]).buckets().encode();
  const Bytes i0 = escrow(h[0]).encode_identities();
  for (uint32_t j : h) {
    if (escrow(j).buckets().encode() != b0 || escrow(j).encode_identities() != i0) return false;
  }
  return true;
}

double Cluster::dvrf_for_user(const std::string& identity) const {
  auto h = honest();
  if (h.empty()) return 0;
  const auto& m = escrow(h[0]).metrics();
  double total = 0;
  auto it = m.dvrf_by_identity.find(identity);
  if (it != m.dvrf_by_identity.end()) total += static_cast<double>(it->second);
  for (const auto& f : filed_) {
    if (f.identity != identity) continue;
    auto a = m.dvrf_by_allegation.find(f.id);
    if (a != m.dvrf_by_allegation.end()) total += a->second;
  }
  return total;
}

}  // namespace sae::harness
