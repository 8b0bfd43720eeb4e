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

#include "deployment.hpp"

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>

#include "sae/crypto/keystore.hpp"
#include "sae/errors.hpp"

namespace sae::tools {

namespace {

constexpr int kVersion = 1;

std::string addr_str(const transport::Address& a) { return a.host + ":" + std::to_string(a.port); }

G1 g1_hex(const nlohmann::json& j) { return G1::from_bytes(from_hex(j.get<std::string>())); }

}  // namespace

escrow::Directory Deployment::directory() const { return escrow::Directory{ca, escrow_keys}; }

transport::PeerKeys Deployment::peer_keys() const {
  transport::PeerKeys k;
  k.ca = ca;
  k.board = board_key;
  for (uint32_t j = 1; j <= escrow_keys.size(); ++j) k.escrows[j] = escrow_keys[j - 1];
  return k;
}

std::map<transport::NodeId, transport::Address> Deployment::escrows_below(transport::NodeId j) const {
  std::map<transport::NodeId, transport::Address> out;
  for (uint32_t k = 1; k < j && k <= escrow_addrs.size(); ++k) out[k] = escrow_addrs[k - 1];
  return out;
}

std::map<transport::NodeId, transport::Address> Deployment::all_escrows() const {
  return escrows_below(static_cast<transport::NodeId>(escrow_addrs.size() + 1));
}

void Deployment::save() const {
  nlohmann::json j;
  j["version"] = kVersion;
  j["escrows"] = cfg.n;
  j["keys_per_period"] = cfg.l;
  j["quota_period_ms"] = quota_period_ms;
  j["ca"] = to_hex(ca.to_bytes());
  j["board"] = {{"address", addr_str(board)}, {"key", to_hex(board_key.to_bytes())}};
  j["nodes"] = nlohmann::json::array();
  for (uint32_t k = 0; k < escrow_addrs.size(); ++k) {
    j["nodes"].push_back({{"index", k + 1}, {"address", addr_str(escrow_addrs[k])}, {"key", to_hex(escrow_keys[k].to_bytes())}});
  }
  std::ofstream out(path("deployment.json"));
  if (!out) throw Error(Errc::kIo, "cannot write " + path("deployment.json"));
  out << j.dump(2) << "\n";
}

Deployment Deployment::load(const std::string& dir) {
  std::ifstream in(dir + "/deployment.json");
  if (!in) throw Error(Errc::kIo, "cannot read " + dir + "/deployment.json");
  Deployment d;
  d.dir = dir;
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.at("version").get<int>() != kVersion) throw Error(Errc::kDecode, "unsupported deployment version");
    d.cfg = ProtocolConfig::for_escrows(j.at("escrows").get<uint32_t>(), j.at("keys_per_period").get<uint32_t>());
    d.quota_period_ms = j.at("quota_period_ms").get<int64_t>();
    d.ca = g1_hex(j.at("ca"));
    d.board = transport::parse_address(j.at("board").at("address").get<std::string>());
    d.board_key = g1_hex(j.at("board").at("key"));
    for (const auto& node : j.at("nodes")) {
      if (node.at("index").get<uint32_t>() != d.escrow_addrs.size() + 1) throw Error(Errc::kDecode, "nodes out of order");
      d.escrow_addrs.push_back(transport::parse_address(node.at("address").get<std::string>()));
      d.escrow_keys.push_back(g1_hex(node.at("key")));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kDecode, std::string("deployment.json: ") + e.what());
  }
  if (d.escrow_keys.size() != d.cfg.n) throw Error(Errc::kDecode, "deployment.json: node count differs from escrows");
  return d;
}

void save_key(const std::string& path, const crypto::KeyPair& key, const std::string& password, Rng& rng) {
  crypto::write_file(path, crypto::keystore_seal(key.sk.to_bytes(), password, rng));
}

crypto::KeyPair load_key(const std::string& path, const std::string& password) {
  Bytes sk = crypto::keystore_open(crypto::read_file(path), password);
  return crypto::KeyPair::from_secret(Field::bls12_381().from_bytes(sk));
}

Deployment create_deployment(const std::string& dir, uint32_t n, uint32_t l, const std::string& host,
                             uint16_t base_port, const std::string& password, Rng& rng) {
  std::filesystem::create_directories(dir);
  Deployment d;
  d.dir = dir;
  d.cfg = ProtocolConfig::for_escrows(n, l);
  crypto::KeyPair ca = crypto::KeyPair::generate(rng);
  crypto::KeyPair board = crypto::KeyPair::generate(rng);
  d.ca = ca.pk;
  d.board = {host, base_port};
  d.board_key = board.pk;
  save_key(d.path("ca.key"), ca, password, rng);
  save_key(d.path("board.key"), board, password, rng);
  for (uint32_t j = 1; j <= n; ++j) {
    crypto::KeyPair k = crypto::KeyPair::generate(rng);
    d.escrow_addrs.push_back({host, static_cast<uint16_t>(base_port + j)});
    d.escrow_keys.push_back(k.pk);
    save_key(d.path("escrow" + std::to_string(j) + ".key"), k, password, rng);
  }
  d.save();
  return d;
}

}  // namespace sae::tools
