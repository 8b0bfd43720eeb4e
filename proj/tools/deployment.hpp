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

#ifndef SAE_TOOLS_DEPLOYMENT_HPP_
#define SAE_TOOLS_DEPLOYMENT_HPP_

#include <string>
#include <vector>

#include "sae/algebra/config.hpp"
#include "sae/crypto/ca.hpp"
#include "sae/escrow/wire.hpp"
#include "sae/transport/tcp.hpp"

namespace sae::tools {

// deployment.json plus password-sealed key files in one directory.
struct Deployment {
  std::string dir;
  ProtocolConfig cfg;
  int64_t quota_period_ms = 24LL * 3600 * 1000;
  G1 ca;
  transport::Address board;
  G1 board_key;
  std::vector<transport::Address> escrow_addrs;  // escrow j at j - 1
  std::vector<G1> escrow_keys;

  escrow::Directory directory() const;
  transport::PeerKeys peer_keys() const;
  std::map<transport::NodeId, transport::Address> escrows_below(transport::NodeId j) const;
  std::map<transport::NodeId, transport::Address> all_escrows() const;

  std::string path(const std::string& name) const { return dir + "/" + name; }
  void save() const;
  static Deployment load(const std::string& dir);
};

// Creates keys for a CA, a board and n escrows with consecutive ports.
Deployment create_deployment(const std::string& dir, uint32_t n, uint32_t l, const std::string& host,
                             uint16_t base_port, const std::string& password, Rng& rng);

void save_key(const std::string& path, const crypto::KeyPair& key, const std::string& password, Rng& rng);
crypto::KeyPair load_key(const std::string& path, const std::string& password);

}  // namespace sae::tools

#endif  // SAE_TOOLS_DEPLOYMENT_HPP_
