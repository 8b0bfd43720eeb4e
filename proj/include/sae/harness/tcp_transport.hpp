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

#ifndef SAE_HARNESS_TCP_TRANSPORT_HPP_
#define SAE_HARNESS_TCP_TRANSPORT_HPP_

#include <map>
#include <memory>

#include "sae/harness/cluster.hpp"
#include "sae/transport/tcp.hpp"

namespace sae::harness {

// Every node on localhost over real sockets: one listener per escrow, one
// board server, and client links dialled on demand.
class TcpTransport : public TransportFactory {
 public:
  struct Options {
    std::string host = "127.0.0.1";
    std::chrono::milliseconds link_delay{0};
    std::chrono::milliseconds round_timeout{20000};
    uint64_t seed = 1;  // board server key
  };

  explicit TcpTransport(Options opts);
  ~TcpTransport() override;

  void set_directory(const escrow::Directory& dir) override;
  transport::Network& network(transport::NodeId node, const crypto::KeyPair& key,
                              const crypto::Certificate* cert) override;
  transport::BulletinBoard& board(transport::NodeId node, const crypto::KeyPair& key,
                                  const crypto::Certificate* cert) override;
  void start() override;

  void set_link_delay(std::chrono::milliseconds d);
  uint64_t frames_sent() const;

 private:
  transport::NodeIdentity identity(transport::NodeId node, const crypto::KeyPair& key,
                                   const crypto::Certificate* cert) const;

  Options opts_;
  transport::PeerKeys keys_;
  crypto::KeyPair board_key_;
  std::unique_ptr<transport::BoardServer> server_;
  transport::Address board_addr_;
  std::map<transport::NodeId, transport::Address> escrow_addrs_;
  std::map<transport::NodeId, std::unique_ptr<transport::TcpNetwork>> nets_;
  std::map<transport::NodeId, std::unique_ptr<transport::RemoteBoard>> boards_;
  bool started_ = false;
};

}  // namespace sae::harness

#endif  // SAE_HARNESS_TCP_TRANSPORT_HPP_
