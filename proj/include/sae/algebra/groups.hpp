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

#ifndef SAE_ALGEBRA_GROUPS_HPP_
#define SAE_ALGEBRA_GROUPS_HPP_

#include <blst.h>
#include <gmpxx.h>

#include <cstdint>

#include "sae/algebra/bytes.hpp"
#include "sae/algebra/field.hpp"

// All groups are written multiplicatively and share one duck-typed surface
// so the VSS/MPC templates can run over any of them:
//   a * b, a.inverse(), a.pow(Scalar), a == b, a.identity(),
//   a.to_bytes(), a.decode(bytes)   (decode yields an element of a's group)

namespace sae {

// Source group G1 of BLS12-381; 48-byte compressed encoding.
class G1 {
 public:
  static constexpr size_t kBytes = 48;

  G1();  // identity
  static G1 generator();
  static G1 hash_to_group(std::string_view tag, ByteView msg);

  G1 operator*(const G1& o) const;
  G1& operator*=(const G1& o) { return *this = *this * o; }
  G1 inverse() const;
  G1 pow(const Scalar& s) const;
  G1 identity() const { return G1(); }
  bool is_identity() const;
  bool operator==(const G1& o) const;
  bool operator!=(const G1& o) const { return !(*this == o); }

  Bytes to_bytes() const;
  // Rejects off-curve and non-subgroup points with kDecode.
  static G1 from_bytes(ByteView b);
  G1 decode(ByteView b) const { return from_bytes(b); }

  const blst_p1& raw() const { return p_; }

 private:
  blst_p1 p_;
};

// Source group G2 of BLS12-381; 96-byte compressed encoding.
class G2 {
 public:
  static constexpr size_t kBytes = 96;

  G2();
  static G2 generator();

  G2 operator*(const G2& o) const;
  G2& operator*=(const G2& o) { return *this = *this * o; }
  G2 inverse() const;
  G2 pow(const Scalar& s) const;
  G2 identity() const { return G2(); }
  bool is_identity() const;
  bool operator==(const G2& o) const;
  bool operator!=(const G2& o) const { return !(*this == o); }

  Bytes to_bytes() const;
  static G2 from_bytes(ByteView b);
  G2 decode(ByteView b) const { return from_bytes(b); }

  const blst_p2& raw() const { return p_; }

 private:
  blst_p2 p_;
};

// Target group (order-r subgroup of Fp12*); 576-byte big-endian encoding.
class Gt {
 public:
  static constexpr size_t kBytes = 576;

  Gt();  // one
  explicit Gt(const blst_fp12& v) : v_(v) {}

  Gt operator*(const Gt& o) const;
  Gt& operator*=(const Gt& o) { return *this = *this * o; }
  Gt inverse() const;
  Gt pow(const Scalar& s) const;
  Gt identity() const { return Gt(); }
  bool is_identity() const;
  bool operator==(const Gt& o) const;
  bool operator!=(const Gt& o) const { return !(*this == o); }

  Bytes to_bytes() const;
  static Gt from_bytes(ByteView b);
  Gt decode(ByteView b) const { return from_bytes(b); }

 private:
  blst_fp12 v_;
};

Gt pairing(const G1& a, const G2& b);

// Order-q subgroup of Z_p* with p = kq + 1, for toy-field runs of the VSS
// machinery. No pairing is available here.
struct ToyGroup {
  const Field* field;
  mpz_class p;
  mpz_class g;
  mpz_class h;
  size_t byte_len;

  // Interned per q; g and h are fixed, log_g(h) is unknown to the protocol
  // code but trivially computable, which is fine for tests.
  static const ToyGroup& for_field(const Field& f);
};

class ToyElem {
 public:
  ToyElem() = default;
  ToyElem(const ToyGroup& grp, mpz_class v) : grp_(&grp), v_(std::move(v)) {}

  ToyElem operator*(const ToyElem& o) const;
  ToyElem& operator*=(const ToyElem& o) { return *this = *this * o; }
  ToyElem inverse() const;
  ToyElem pow(const Scalar& s) const;
  ToyElem identity() const { return ToyElem(*grp_, 1); }
  bool is_identity() const { return v_ == 1; }
  bool operator==(const ToyElem& o) const { return grp_ == o.grp_ && v_ == o.v_; }
  bool operator!=(const ToyElem& o) const { return !(*this == o); }

  Bytes to_bytes() const;
  ToyElem decode(ByteView b) const;

  const mpz_class& value() const { return v_; }

 private:
  const ToyGroup* grp_ = nullptr;
  mpz_class v_;
};

// Pedersen commitment key over group G: commit(x, r) = g^x h^r.
template <typename G>
struct CommitKey {
  const Field* field;
  G g;
  G h;

  G commit(const Scalar& x, const Scalar& r) const { return g.pow(x) * h.pow(r); }
  G identity() const { return g.identity(); }
};

// Public parameters of the real instantiation. Type-3 placement: g and all
// proofs live in G1, VRF public keys in G2, gt = e(g1, g2).
struct PairingContext {
  const Field* field;
  G1 g;
  G1 h;
  G2 g2;
  Gt gt;

  static const PairingContext& get();
  CommitKey<G1> commit_key() const { return {field, g, h}; }
};

CommitKey<ToyElem> toy_commit_key(const Field& f);

}  // namespace sae

#endif  // SAE_ALGEBRA_GROUPS_HPP_
