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

#include "sae/client/client.hpp"

#include <fstream>

#include "sae/algebra/hash.hpp"
#include "sae/crypto/aead.hpp"
#include "sae/crypto/keystore.hpp"
#include "sae/dvrf/dvrf.hpp"
#include "sae/errors.hpp"
#include "sae/vss/mpc.hpp"

namespace sae::client {

using transport::NodeId;

Bytes canonical_meta(const Meta& meta) {
  ByteWriter w;
  w.u8(1).u32(static_cast<uint32_t>(meta.size()));
  for (const auto& [k, v] : meta) w.str(k).str(v);
  return w.take();
}

Scalar meta_scalar(const Meta& meta) { return hash_to_scalar(kTagMeta, canonical_meta(meta)); }

std::vector<std::string> default_categories() {
  return {"sexual-harassment", "sexual-assault", "discrimination", "bullying", "retaliation", "other"};
}

std::vector<std::string> load_categories(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kIo, "cannot read categories file " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    auto e = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(b, e - b + 1));
  }
  if (out.empty()) throw Error(Errc::kInvalidConfig, "no categories in " + path);
  return out;
}

Meta make_meta(const std::string& accused, const std::string& category, const std::vector<std::string>& categories) {
  if (accused.empty()) throw Error(Errc::kInvalidConfig, "accused identifier is empty");
  if (std::find(categories.begin(), categories.end(), category) == categories.end()) {
    throw Error(Errc::kInvalidConfig, "unknown category: " + category);
  }
  return Meta{{std::string(kAccusedField), accused}, {std::string(kCategoryField), category}};
}

Bytes encode_identity(const ClientIdentity& id) {
  ByteWriter w;
  w.u8(1).str(id.identity).bytes(id.key.sk.to_bytes()).bytes(id.cert.encode());
  return w.take();
}

ClientIdentity decode_identity(ByteView b) {
  ByteReader r(b);
  if (r.u8() != 1) throw Error(Errc::kDecode, "unknown identity version");
  ClientIdentity id;
  id.identity = r.str();
  id.key = crypto::KeyPair::from_secret(Field::bls12_381().from_bytes(r.bytes(64)));
  id.cert = crypto::Certificate::decode(r.bytes(4096));
  r.expect_done();
  return id;
}

Client::Client(ClientIdentity id, escrow::Directory directory, ProtocolConfig cfg, NodeId node, Rng rng)
    : id_(std::move(id)), directory_(std::move(directory)), cfg_(cfg), node_(node), rng_(std::move(rng)) {
  cfg_.validate();
  if (node_ < transport::kFirstClientId) throw Error(Errc::kInvalidConfig, "client node id in escrow range");
  if (directory_.escrows.size() != cfg_.n) throw Error(Errc::kInvalidConfig, "directory size differs from n");
}

size_t Client::next_unused() const {
  for (size_t i = 0; i < keys_.size(); ++i) {
    if (!keys_[i].used) return i;
  }
  return keys_.size();
}

namespace {

// Agreement of at least f + 1 escrows on a status message; the most common
// rejection code otherwise.
void check_status(const transport::Inbox& in, const ProtocolConfig& cfg) {
  uint32_t ok = 0;
  std::map<uint32_t, uint32_t> codes;
  for (NodeId j : vss::escrow_ids(cfg)) {
    const transport::Message* m = in.get(j, "reg/status");
    if (m == nullptr) continue;
    try {
      ByteReader r(m->body);
      uint8_t accepted = r.u8();
      uint32_t code = r.u32();
      if (accepted) {
        ++ok;
      } else {
        ++codes[code];
      }
    } catch (const Error&) {
    }
  }
  if (ok >= cfg.f + 1) return;
  std::string reason = "no quorum";
  uint32_t best = 0;
  for (const auto& [code, count] : codes) {
    if (count > best) {
      best = count;
      reason = std::string(errc_name(static_cast<Errc>(code)));
    }
  }
  throw Error(Errc::kRegistrationRejected, "registration rejected: " + reason);
}

}  // namespace

std::vector<OneTimeKey> Client::register_keys(transport::BulletinBoard& board, transport::Network& net,
                                              uint32_t count, const G2& mac_key) {
  if (count == 0) return {};
  escrow::RegisterRequest req{id_.cert, count, node_, {}};
  req.signature = crypto::sign(id_.key, req.signed_body(), rng_);
  uint64_t seq = board.post(escrow::board_payload(escrow::EntryKind::kRegister, req.encode()), node_);

  std::vector<NodeId> members = vss::escrow_ids(cfg_);
  members.push_back(node_);
  auto ep = net.open("reg/" + std::to_string(seq), node_, members);
  check_status(ep->end_round(), cfg_);

  const auto ck = PairingContext::get().commit_key();
  std::vector<OneTimeKey> fresh;
  for (uint32_t k = 0; k < count; ++k) {
    OneTimeKey key{crypto::KeyPair::generate(rng_), G1(), false};
    Scalar x = escrow::pk_scalar(key.key.pk);
    auto dealing = vss::deal_vss(ck, x, cfg_, vss::CommitMode::kPedersen, rng_);
    vss::VssExchangeSpec<G1> spec;
    spec.tag = "reg" + std::to_string(k);
    spec.degree = cfg_.f;
    spec.dealers = {node_};
    spec.receivers = vss::escrow_ids(cfg_);
    spec.audience = members;
    spec.mine = &dealing;
    vss::run_vss_exchange(ck, *ep, spec);
    dvrf::VrfOutput mac = dvrf::receive_dvrf(cfg_, *ep, true);
    if (!mac.proof || !dvrf::verify_vrf(mac_key, *mac.proof, x)) {
      throw Error(Errc::kMacVerifyFailed, "MAC does not verify under PK_I");
    }
    key.mac_proof = *mac.proof;
    // The escrows' reveal-key evaluation runs without the client.
    for (uint32_t r = 0; r < dvrf::kDvrfRounds; ++r) ep->end_round();
    fresh.push_back(key);
  }
  transport::Inbox done = ep->end_round();
  uint32_t agree = 0;
  for (NodeId j : vss::escrow_ids(cfg_)) {
    const transport::Message* m = done.get(j, "reg/done");
    if (m == nullptr) continue;
    try {
      ByteReader r(m->body);
      if (r.u32() == count) ++agree;
    } catch (const Error&) {
    }
  }
  if (agree < cfg_.f + 1) throw Error(Errc::kRegistrationRejected, "escrows did not confirm the registration");
  keys_.insert(keys_.end(), fresh.begin(), fresh.end());
  return fresh;
}

escrow::FilingPackage Client::prepare_filing(size_t key_index, const Meta& meta, ByteView text, uint32_t t) {
  if (key_index >= keys_.size()) throw Error(Errc::kInvalidConfig, "no such key");
  OneTimeKey& key = keys_[key_index];
  if (key.used) throw Error(Errc::kKeyAlreadyUsed, "one-time key already used");
  if (t == 0) throw Error(Errc::kInvalidConfig, "threshold must be at least 1");
  const auto ck = PairingContext::get().commit_key();
  const Field& f = *ck.field;
  Scalar k = f.random(rng_);
  auto dm = vss::deal_vss(ck, meta_scalar(meta), cfg_, vss::CommitMode::kPedersen, rng_);
  auto dk = vss::deal_vss(ck, k, cfg_, vss::CommitMode::kPedersen, rng_);

  escrow::FilingPackage pkg;
  pkg.pk = key.key.pk;
  pkg.t = t;
  pkg.mac_proof = key.mac_proof;
  pkg.ciphertext = crypto::aead_seal(crypto::key_from_scalar(k), text, escrow::allegation_aad(pkg.pk, t), rng_);
  pkg.m_commitments = dm.commitments;
  pkg.k_commitments = dk.commitments;
  for (uint32_t j = 1; j <= cfg_.n; ++j) {
    pkg.sealed_shares.push_back(crypto::ecies_seal(directory_.escrow(j),
                                                   escrow::encode_share_pair(dm.shares[j - 1], dk.shares[j - 1]),
                                                   escrow::share_aad(pkg.pk, j), rng_));
  }
  pkg.signature = crypto::sign(key.key, pkg.signed_body(), rng_);
  key.used = true;
  return pkg;
}

escrow::FilingPackage Client::file(size_t key_index, const Meta& meta, ByteView text, uint32_t t,
                                   transport::AnonChannel& channel) {
  escrow::FilingPackage pkg = prepare_filing(key_index, meta, text, t);
  channel.send(escrow::board_payload(escrow::EntryKind::kFiling, pkg.encode()));
  return pkg;
}

Bytes Client::encode_keys() const {
  ByteWriter w;
  w.u8(1).bytes(encode_identity(id_)).u32(static_cast<uint32_t>(keys_.size()));
  for (const OneTimeKey& k : keys_) {
    w.bytes(k.key.sk.to_bytes()).raw(k.mac_proof.to_bytes()).u8(k.used ? 1 : 0);
  }
  return w.take();
}

void Client::restore_keys(ByteView encoded) {
  ByteReader r(encoded);
  if (r.u8() != 1) throw Error(Errc::kDecode, "unknown keystore payload version");
  ClientIdentity id = decode_identity(r.bytes(1u << 16));
  uint32_t n = r.u32();
  std::vector<OneTimeKey> keys;
  for (uint32_t i = 0; i < n; ++i) {
    OneTimeKey k;
    k.key = crypto::KeyPair::from_secret(Field::bls12_381().from_bytes(r.bytes(64)));
    k.mac_proof = G1::from_bytes(r.raw(G1::kBytes));
    k.used = r.u8() != 0;
    keys.push_back(std::move(k));
  }
  r.expect_done();
  id_ = std::move(id);
  keys_ = std::move(keys);
}

void Client::save(const std::string& path, std::string_view password) {
  crypto::write_file(path, crypto::keystore_seal(encode_keys(), password, rng_));
}

void Client::load(const std::string& path, std::string_view password) {
  restore_keys(crypto::keystore_open(crypto::read_file(path), password));
}

}  // namespace sae::client
