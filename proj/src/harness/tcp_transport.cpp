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

#include "sae/harness/tcp_transport.hpp"

#include "sae/errors.hpp"

namespace sae::harness {

using transport::NodeId;

TcpTransport::TcpTransport(Options opts) : opts_(std::move(opts)) {
  Rng rng = Rng::from_u64(opts_.seed).fork("board");
  board_key_ = crypto::KeyPair::generate(rng);
  keys_.board = board_key_.pk;
}

TcpTransport::~TcpTransport() {
  // Boards and clients first so that escrows see orderly closes.
  boards_.clear();
  for (auto it = nets_.rbegin(); it != nets_.rend(); ++it) it->second.reset();
  if (server_) server_->stop();
}

void TcpTransport::set_directory(const escrow::Directory& dir) {
  keys_.ca = dir.ca;
  for (uint32_t j = 1; j <= dir.escrows.size(); ++j) keys_.escrows[j] = dir.escrow(j);
  server_ = std::make_unique<transport::BoardServer>(
      transport::NodeIdentity{transport::kBoardId, board_key_, std::nullopt}, keys_);
  board_addr_ = {opts_.host, server_->listen({opts_.host, 0})};
}

transport::NodeIdentity TcpTransport::identity(NodeId node, const crypto::KeyPair& key,
                                               const crypto::Certificate* cert) const {
  transport::NodeIdentity id{node, key, std::nullopt};
  if (cert) id.cert = *cert;
  return id;
}

transport::Network& TcpTransport::network(NodeId node, const crypto::KeyPair& key, const crypto::Certificate* cert) {
  auto it = nets_.find(node);
  if (it != nets_.end()) return *it->second;
  if (!server_) throw Error(Errc::kInvalidConfig, "set_directory must precede node creation");
  transport::TcpNetwork::Options o;
  o.round_timeout = opts_.round_timeout;
  o.link_delay = opts_.link_delay;
  auto net = std::make_unique<transport::TcpNetwork>(identity(node, key, cert), keys_, o);
  if (node < transport::kFirstClientId) {
    escrow_addrs_[node] = {opts_.host, net->listen({opts_.host, 0})};
  } else {
    if (!started_) throw Error(Errc::kInvalidConfig, "clients join after start()");
    net->connect(escrow_addrs_);
  }
  return *nets_.emplace(node, std::move(net)).first->second;
}

transport::BulletinBoard& TcpTransport::board(NodeId node, const crypto::KeyPair& key,
                                              const crypto::Certificate* cert) {
  auto it = boards_.find(node);
  if (it != boards_.end()) return *it->second;
  if (!server_) throw Error(Errc::kInvalidConfig, "set_directory must precede node creation");
  // Node 0 is the harness reading on behalf of an escrow key.
  NodeId as = node == 0 ? 1 : node;
  auto b = std::make_unique<transport::RemoteBoard>(board_addr_, identity(as, key, cert), keys_);
  return *boards_.emplace(node, std::move(b)).first->second;
}

void TcpTransport::start() {
  std::vector<NodeId> escrows;
  for (const auto& [id, _] : escrow_addrs_) escrows.push_back(id);
  for (NodeId j : escrows) {
    std::map<NodeId, transport::Address> lower;
    for (NodeId k : escrows) {
      if (k < j) lower[k] = escrow_addrs_.at(k);
    }
    nets_.at(j)->connect(lower);
  }
  for (NodeId j : escrows) nets_.at(j)->wait_for_peers(escrows, std::chrono::seconds(10));
  started_ = true;
}

void TcpTransport::set_link_delay(std::chrono::milliseconds d) {
  for (auto& [_, n] : nets_) n->set_link_delay(d);
  opts_.link_delay = d;
}

uint64_t TcpTransport::frames_sent() const {
  uint64_t total = 0;
  for (const auto& [_, n] : nets_) total += n->frames_sent();
  return total;
}

}  // namespace sae::harness
