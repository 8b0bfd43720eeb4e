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

#include "sae/escrow/wire.hpp"

#include <map>
#include <thread>

#include "sae/errors.hpp"

namespace sae::escrow {

namespace {

const Field& field() { return Field::bls12_381(); }

G1 read_g1(ByteReader& r) { return G1::from_bytes(r.raw(G1::kBytes)); }

}  // namespace

Bytes Directory::encode() const {
  ByteWriter w;
  w.u8(1).raw(ca.to_bytes()).u32(static_cast<uint32_t>(escrows.size()));
  for (const G1& e : escrows) w.raw(e.to_bytes());
  return w.take();
}

Directory Directory::decode(ByteView b) {
  ByteReader r(b);
  if (r.u8() != 1) throw Error(Errc::kDecode, "unknown directory version");
  Directory d;
  d.ca = read_g1(r);
  uint32_t n = r.u32();
  if (n > 1024) throw Error(Errc::kDecode, "directory too large");
  for (uint32_t i = 0; i < n; ++i) d.escrows.push_back(read_g1(r));
  r.expect_done();
  return d;
}

Bytes RegisterRequest::signed_body() const {
  ByteWriter w;
  w.str("SAE-v1-register").bytes(cert.encode()).u32(count).u32(client);
  return w.take();
}

Bytes RegisterRequest::encode() const {
  ByteWriter w;
  w.bytes(cert.encode()).u32(count).u32(client).bytes(signature.encode());
  return w.take();
}

RegisterRequest RegisterRequest::decode(ByteView b) {
  ByteReader r(b);
  RegisterRequest q;
  q.cert = crypto::Certificate::decode(r.bytes(4096));
  q.count = r.u32();
  q.client = r.u32();
  q.signature = crypto::Signature::decode(r.bytes(256));
  r.expect_done();
  return q;
}

Bytes FilingPackage::signed_body() const {
  ByteWriter w;
  w.str("SAE-v1-filing").raw(pk.to_bytes()).u32(t).raw(mac_proof.to_bytes()).bytes(ciphertext);
  w.bytes(m_commitments.encode()).bytes(k_commitments.encode());
  w.u32(static_cast<uint32_t>(sealed_shares.size()));
  for (const Bytes& s : sealed_shares) w.bytes(s);
  return w.take();
}

Bytes FilingPackage::encode() const {
  Bytes body = signed_body();
  ByteWriter w;
  w.bytes(body).bytes(signature.encode());
  return w.take();
}

FilingPackage FilingPackage::decode(ByteView b, uint32_t degree) {
  ByteReader outer(b);
  Bytes body = outer.bytes();
  Bytes sig = outer.bytes(256);
  outer.expect_done();
  ByteReader r(body);
  FilingPackage p;
  if (r.str(64) != "SAE-v1-filing") throw Error(Errc::kDecode, "not a filing");
  p.pk = read_g1(r);
  p.t = r.u32();
  p.mac_proof = read_g1(r);
  p.ciphertext = r.bytes(1u << 20);
  const G1 proto = PairingContext::get().g;
  p.m_commitments = vss::Commitments<G1>::decode(proto, r.bytes(1u << 16), degree);
  p.k_commitments = vss::Commitments<G1>::decode(proto, r.bytes(1u << 16), degree);
  uint32_t n = r.u32();
  if (n > 1024) throw Error(Errc::kDecode, "too many shares");
  for (uint32_t i = 0; i < n; ++i) p.sealed_shares.push_back(r.bytes(4096));
  r.expect_done();
  p.signature = crypto::Signature::decode(sig);
  return p;
}

Scalar pk_scalar(const G1& pk) { return hash_to_scalar(kTagPubKey, pk.to_bytes()); }

Bytes share_aad(const G1& pk, uint32_t escrow) {
  ByteWriter w;
  w.str("SAE-v1-filing-share").raw(pk.to_bytes()).u32(escrow);
  return w.take();
}

Bytes allegation_aad(const G1& pk, uint32_t t) {
  ByteWriter w;
  w.str("SAE-v1-allegation").raw(pk.to_bytes()).u32(t);
  return w.take();
}

Bytes encode_share_pair(const vss::Share& m, const vss::Share& k) {
  ByteWriter w;
  w.bytes(vss::encode_share(m)).bytes(vss::encode_share(k));
  return w.take();
}

std::pair<vss::Share, vss::Share> decode_share_pair(ByteView b) {
  ByteReader r(b);
  vss::Share m = vss::decode_share(field(), r.bytes(1024));
  vss::Share k = vss::decode_share(field(), r.bytes(1024));
  r.expect_done();
  return {m, k};
}

Bytes Announcement::signed_body() const {
  ByteWriter w;
  w.str("SAE-v1-announce").u32(escrow).raw(pk_i.to_bytes());
  return w.take();
}

Bytes Announcement::encode() const {
  ByteWriter w;
  w.u32(escrow).raw(pk_i.to_bytes()).bytes(signature.encode());
  return w.take();
}

Announcement Announcement::decode(ByteView b) {
  ByteReader r(b);
  Announcement a;
  a.escrow = r.u32();
  a.pk_i = G2::from_bytes(r.raw(G2::kBytes));
  a.signature = crypto::Signature::decode(r.bytes(256));
  r.expect_done();
  return a;
}

Bytes board_payload(EntryKind kind, const Bytes& body) {
  Bytes out;
  out.reserve(body.size() + 1);
  out.push_back(static_cast<uint8_t>(kind));
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

std::pair<EntryKind, ByteView> split_payload(ByteView payload) {
  if (payload.empty()) throw Error(Errc::kDecode, "empty board payload");
  uint8_t k = payload[0];
  if (k < 1 || k > 3) throw Error(Errc::kDecode, "unknown board entry kind");
  return {static_cast<EntryKind>(k), payload.subspan(1)};
}

std::optional<G2> agreed_mac_key(const std::vector<transport::BoardEntry>& entries, const Directory& dir,
                                 const ProtocolConfig& cfg) {
  std::map<uint32_t, Bytes> by_escrow;
  for (const auto& e : entries) {
    try {
      auto [kind, body] = split_payload(e.payload);
      if (kind != EntryKind::kAnnounce) continue;
      Announcement a = Announcement::decode(body);
      if (a.escrow < 1 || a.escrow > dir.escrows.size() || e.anonymous || e.sender != a.escrow) continue;
      if (!crypto::verify(dir.escrow(a.escrow), a.signed_body(), a.signature)) continue;
      by_escrow.emplace(a.escrow, a.pk_i.to_bytes());
    } catch (const Error&) {
    }
  }
  std::map<Bytes, uint32_t> votes;
  for (const auto& [_, pk] : by_escrow) {
    if (++votes[pk] >= cfg.f + 1) return G2::from_bytes(pk);
  }
  return std::nullopt;
}

G2 wait_for_mac_key(transport::BulletinBoard& board, const Directory& dir, const ProtocolConfig& cfg,
                    std::chrono::milliseconds timeout) {
  auto deadline = std::chrono::steady_clock::now() + timeout;
  while (true) {
    if (auto pk = agreed_mac_key(board.read(0), dir, cfg)) return *pk;
    if (std::chrono::steady_clock::now() >= deadline) throw Error(Errc::kTimeout, "no agreed MAC key on the board");
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
}

}  // namespace sae::escrow
