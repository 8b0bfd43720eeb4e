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

#ifndef SAE_ESCROW_WIRE_HPP_
#define SAE_ESCROW_WIRE_HPP_

#include <optional>
#include <vector>

#include "sae/algebra/config.hpp"
#include "sae/algebra/groups.hpp"
#include "sae/algebra/hash.hpp"
#include "sae/crypto/ca.hpp"
#include "sae/crypto/sign.hpp"
#include "sae/transport/board.hpp"
#include "sae/vss/vss.hpp"

namespace sae::escrow {

// First byte of every board payload.
enum class EntryKind : uint8_t {
  kRegister = 1,
  kFiling = 2,
  kAnnounce = 3,
};

// Public keys every participant is configured with.
struct Directory {
  G1 ca;
  std::vector<G1> escrows;  // escrow j at position j - 1

  const G1& escrow(uint32_t j) const { return escrows.at(j - 1); }
  Bytes encode() const;
  static Directory decode(ByteView b);
};

struct RegisterRequest {
  crypto::Certificate cert;
  uint32_t count = 0;
  transport::NodeId client = 0;
  crypto::Signature signature;  // by cert.key over signed_body()

  Bytes signed_body() const;
  Bytes encode() const;
  static RegisterRequest decode(ByteView b);
};

// Everything an alleger posts anonymously. The one-time pk doubles as the
// allegation identifier.
struct FilingPackage {
  G1 pk;
  uint32_t t = 0;
  G1 mac_proof;
  Bytes ciphertext;                  // AEAD under the key derived from k
  vss::Commitments<G1> m_commitments;
  vss::Commitments<G1> k_commitments;
  std::vector<Bytes> sealed_shares;  // ECIES to escrow j at position j - 1
  crypto::Signature signature;       // by the one-time sk over signed_body()

  Bytes id() const { return pk.to_bytes(); }
  Bytes signed_body() const;
  Bytes encode() const;
  static FilingPackage decode(ByteView b, uint32_t degree);
};

// H2 of a one-time public key: the DVRF input for MACs and reveal lookups.
Scalar pk_scalar(const G1& pk);

// Associated data binding a sealed share to its filing and recipient.
Bytes share_aad(const G1& pk, uint32_t escrow);
// Associated data of the allegation ciphertext.
Bytes allegation_aad(const G1& pk, uint32_t t);

// Plaintext of a sealed share: the m share followed by the k share.
Bytes encode_share_pair(const vss::Share& m, const vss::Share& k);
std::pair<vss::Share, vss::Share> decode_share_pair(ByteView b);

struct Announcement {
  uint32_t escrow = 0;
  G2 pk_i;
  crypto::Signature signature;  // by the escrow identity key

  Bytes signed_body() const;
  Bytes encode() const;
  static Announcement decode(ByteView b);
};

Bytes board_payload(EntryKind kind, const Bytes& body);
// Throws kDecode on an unknown kind.
std::pair<EntryKind, ByteView> split_payload(ByteView payload);

// PK_I as announced identically by at least f + 1 escrows.
std::optional<G2> agreed_mac_key(const std::vector<transport::BoardEntry>& entries, const Directory& dir,
                                 const ProtocolConfig& cfg);
// Waits on the board until agreed_mac_key succeeds; throws kTimeout.
G2 wait_for_mac_key(transport::BulletinBoard& board, const Directory& dir, const ProtocolConfig& cfg,
                    std::chrono::milliseconds timeout);

}  // namespace sae::escrow

#endif  // SAE_ESCROW_WIRE_HPP_
