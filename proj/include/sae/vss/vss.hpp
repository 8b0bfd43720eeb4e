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

#ifndef SAE_VSS_VSS_HPP_
#define SAE_VSS_VSS_HPP_

#include <cstdint>
#include <vector>

#include "sae/algebra/bytes.hpp"
#include "sae/algebra/config.hpp"
#include "sae/algebra/field.hpp"
#include "sae/algebra/groups.hpp"
#include "sae/algebra/rng.hpp"

namespace sae::vss {

// Feldman dealings are Pedersen dealings with an all-zero blinding
// polynomial; verification is identical because h^0 = 1.
enum class CommitMode : uint8_t { kPedersen = 0, kFeldman = 1 };

// Evaluation of the dealt polynomial (and its blinding polynomial) at `index`.
struct Share {
  uint32_t index = 0;
  Scalar value;
  Scalar blinding;

  bool operator==(const Share&) const = default;
};

Bytes encode_share(const Share& s);
Share decode_share(const Field& f, ByteView b);

// C_k = g^{a_k} h^{b_k} for k = 0..degree.
template <typename G>
struct Commitments {
  std::vector<G> c;

  uint32_t degree() const { return static_cast<uint32_t>(c.size()) - 1; }
  // prod_k C_k^{j^k}: the commitment to the share at index j.
  G eval(const Field& f, uint32_t j) const;

  Bytes encode() const;
  static Commitments decode(const G& proto, ByteView b, uint32_t expected_degree);

  bool operator==(const Commitments&) const = default;
};

template <typename G>
struct Dealing {
  CommitMode mode = CommitMode::kPedersen;
  uint32_t degree = 0;
  Commitments<G> commitments;
  std::vector<Share> shares;  // shares[j-1] belongs to party j
};

// One party's view of a shared value: its own share plus the public
// commitment vector that all parties agree on.
template <typename G>
struct SharedScalar {
  Share share;
  Commitments<G> commitments;
};

template <typename G>
Dealing<G> deal_vss(const CommitKey<G>& ck, const Scalar& secret, const ProtocolConfig& cfg,
                    CommitMode mode, Rng& rng);

// Deterministic dealing from explicit polynomial coefficients (constant term
// first). `blinding_coeffs` must be empty (Feldman) or match in length.
template <typename G>
Dealing<G> deal_vss_with(const CommitKey<G>& ck, const std::vector<Scalar>& coeffs,
                         const std::vector<Scalar>& blinding_coeffs, uint32_t n);

template <typename G>
bool verify_share(const CommitKey<G>& ck, const Commitments<G>& commitments, const Share& share);

// Lagrange coefficients at 0 for the given distinct indices.
std::vector<Scalar> lagrange_at_zero(const Field& f, const std::vector<uint32_t>& indices);

// Interpolates at 0 using the lowest f+1 distinct indices. Throws
// kInsufficientShares.
Scalar combine_shares(const std::vector<Share>& shares, uint32_t f);

// Verifies every share first; a failure throws IdentifiableAbort with code
// kInconsistentShares naming the offending index.
template <typename G>
Scalar combine_shares(const CommitKey<G>& ck, const Commitments<G>& commitments,
                      const std::vector<Share>& shares, uint32_t f);

// Throws kIndexMismatch when the operands belong to different parties.
template <typename G>
SharedScalar<G> add_local(const SharedScalar<G>& a, const SharedScalar<G>& b);
template <typename G>
SharedScalar<G> scale_local(const Scalar& c, const SharedScalar<G>& a);

Share add_local(const Share& a, const Share& b);
Share scale_local(const Scalar& c, const Share& a);

// Degree-`degree` sharing of a public value: every share is `x` with zero
// blinding, commitments are (g^x, 1, ..., 1).
template <typename G>
SharedScalar<G> public_constant(const CommitKey<G>& ck, const Scalar& x, uint32_t index,
                                uint32_t degree);

}  // namespace sae::vss

#endif  // SAE_VSS_VSS_HPP_
