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

#ifndef SAE_CLIENT_CLIENT_HPP_
#define SAE_CLIENT_CLIENT_HPP_

#include <chrono>
#include <map>
#include <string>
#include <vector>

#include "sae/crypto/ca.hpp"
#include "sae/escrow/wire.hpp"
#include "sae/transport/board.hpp"
#include "sae/transport/network.hpp"

namespace sae::client {

// Structured meta-data. Matching is exact equality of the canonical form.
using Meta = std::map<std::string, std::string>;

inline constexpr std::string_view kAccusedField = "accused";
inline constexpr std::string_view kCategoryField = "category";

// Version byte, field count, then length-prefixed (key, value) pairs in key
// order. Injective on field maps.
Bytes canonical_meta(const Meta& meta);
Scalar meta_scalar(const Meta& meta);

std::vector<std::string> default_categories();
// One category per line; blank lines and '#' comments are skipped.
std::vector<std::string> load_categories(const std::string& path);
// Throws kInvalidConfig for an empty accused or a category outside the list.
Meta make_meta(const std::string& accused, const std::string& category,
               const std::vector<std::string>& categories = default_categories());

struct OneTimeKey {
  crypto::KeyPair key;
  G1 mac_proof;
  bool used = false;
};

struct ClientIdentity {
  std::string identity;
  crypto::KeyPair key;
  crypto::Certificate cert;
};

class Client {
 public:
  Client(ClientIdentity id, escrow::Directory directory, ProtocolConfig cfg, transport::NodeId node, Rng rng);

  // Posts a registration request for `count` keys and runs the session with
  // every escrow. Returns the new keys, which are also retained. Throws
  // kRegistrationRejected or kMacVerifyFailed.
  std::vector<OneTimeKey> register_keys(transport::BulletinBoard& board, transport::Network& net, uint32_t count,
                                        const G2& mac_key);

  // Builds a signed package for an unused key and marks the key used. Throws
  // kKeyAlreadyUsed.
  escrow::FilingPackage prepare_filing(size_t key_index, const Meta& meta, ByteView text, uint32_t t);
  // prepare_filing, then hands the package to the anonymous channel.
  escrow::FilingPackage file(size_t key_index, const Meta& meta, ByteView text, uint32_t t,
                             transport::AnonChannel& channel);

  const ClientIdentity& identity() const { return id_; }
  transport::NodeId node() const { return node_; }
  const std::vector<OneTimeKey>& keys() const { return keys_; }
  // Index of the first unused key, or keys().size().
  size_t next_unused() const;

  // Keystore payload: identity, certificate, identity key and one-time keys.
  Bytes encode_keys() const;
  void restore_keys(ByteView encoded);
  void save(const std::string& path, std::string_view password);
  void load(const std::string& path, std::string_view password);

 private:
  ClientIdentity id_;
  escrow::Directory directory_;
  ProtocolConfig cfg_;
  transport::NodeId node_;
  Rng rng_;
  std::vector<OneTimeKey> keys_;
};

Bytes encode_identity(const ClientIdentity& id);
ClientIdentity decode_identity(ByteView b);

}  // namespace sae::client

#endif  // SAE_CLIENT_CLIENT_HPP_
