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

#include "sae/algebra/groups.hpp"

#include <cstring>
#include <map>
#include <memory>
#include <mutex>

#include "sae/algebra/hash.hpp"
#include "sae/errors.hpp"

namespace sae {

namespace {

constexpr char kPedersenTag[] = "SAE-v1-pedersen-h";

}  // namespace

// ---- G1 ----

G1::G1() { std::memset(&p_, 0, sizeof(p_)); }

G1 G1::generator() {
  G1 r;
  r.p_ = *blst_p1_generator();
  return r;
}

G1 G1::hash_to_group(std::string_view tag, ByteView msg) {
  G1 r;
  blst_hash_to_g1(&r.p_, msg.data(), msg.size(), reinterpret_cast<const byte*>(tag.data()),
                  tag.size(), nullptr, 0);
  return r;
}

G1 G1::operator*(const G1& o) const {
  G1 r;
  blst_p1_add_or_double(&r.p_, &p_, &o.p_);
  return r;
}

G1 G1::inverse() const {
  G1 r = *this;
  blst_p1_cneg(&r.p_, true);
  return r;
}

G1 G1::pow(const Scalar& s) const {
  size_t nbits = s.bit_len();
  if (nbits == 0) return G1();
  uint8_t le[32];
  s.to_le32(le);
  G1 r;
  blst_p1_mult(&r.p_, &p_, le, nbits);
  return r;
}

bool G1::is_identity() const { return blst_p1_is_inf(&p_); }
bool G1::operator==(const G1& o) const { return blst_p1_is_equal(&p_, &o.p_); }

Bytes G1::to_bytes() const {
  Bytes out(kBytes);
  blst_p1_compress(out.data(), &p_);
  return out;
}

G1 G1::from_bytes(ByteView b) {
  if (b.size() != kBytes) throw Error(Errc::kDecode, "G1 element has wrong width");
  blst_p1_affine a;
  if (blst_p1_uncompress(&a, b.data()) != BLST_SUCCESS) throw Error(Errc::kDecode, "bad G1 encoding");
  if (!blst_p1_affine_in_g1(&a)) throw Error(Errc::kDecode, "G1 point outside subgroup");
  G1 r;
  blst_p1_from_affine(&r.p_, &a);
  return r;
}

// ---- G2 ----

G2::G2() { std::memset(&p_, 0, sizeof(p_)); }

G2 G2::generator() {
  G2 r;
  r.p_ = *blst_p2_generator();
  return r;
}

G2 G2::operator*(const G2& o) const {
  G2 r;
  blst_p2_add_or_double(&r.p_, &p_, &o.p_);
  return r;
}

G2 G2::inverse() const {
  G2 r = *this;
  blst_p2_cneg(&r.p_, true);
  return r;
}

G2 G2::pow(const Scalar& s) const {
  size_t nbits = s.bit_len();
  if (nbits == 0) return G2();
  uint8_t le[32];
  s.to_le32(le);
  G2 r;
  blst_p2_mult(&r.p_, &p_, le, nbits);
  return r;
}

bool G2::is_identity() const { return blst_p2_is_inf(&p_); }
bool G2::operator==(const G2& o) const { return blst_p2_is_equal(&p_, &o.p_); }

Bytes G2::to_bytes() const {
  Bytes out(kBytes);
  blst_p2_compress(out.data(), &p_);
  return out;
}

G2 G2::from_bytes(ByteView b) {
  if (b.size() != kBytes) throw Error(Errc::kDecode, "G2 element has wrong width");
  blst_p2_affine a;
  if (blst_p2_uncompress(&a, b.data()) != BLST_SUCCESS) throw Error(Errc::kDecode, "bad G2 encoding");
  if (!blst_p2_affine_in_g2(&a)) throw Error(Errc::kDecode, "G2 point outside subgroup");
  G2 r;
  blst_p2_from_affine(&r.p_, &a);
  return r;
}

// ---- Gt ----

Gt::Gt() : v_(*blst_fp12_one()) {}

Gt Gt::operator*(const Gt& o) const {
  Gt r;
  blst_fp12_mul(&r.v_, &v_, &o.v_);
  return r;
}

Gt Gt::inverse() const {
  // Unitary elements invert by conjugation.
  Gt r = *this;
  blst_fp12_conjugate(&r.v_);
  return r;
}

Gt Gt::pow(const Scalar& s) const {
  size_t nbits = s.bit_len();
  if (nbits == 0) return Gt();
  uint8_t le[32];
  s.to_le32(le);
  // Fixed 4-bit windows, most significant first; squarings stay in the
  // cyclotomic subgroup so the cheap squaring formula applies.
  blst_fp12 table[16];
  table[0] = *blst_fp12_one();
  table[1] = v_;
  for (int i = 2; i < 16; ++i) blst_fp12_mul(&table[i], &table[i - 1], &v_);
  size_t windows = (nbits + 3) / 4;
  blst_fp12 acc = *blst_fp12_one();
  bool started = false;
  for (size_t w = windows; w-- > 0;) {
    if (started) {
      for (int k = 0; k < 4; ++k) blst_fp12_cyclotomic_sqr(&acc, &acc);
    }
    unsigned nib = (le[w / 2] >> ((w % 2) * 4)) & 0xF;
    if (nib != 0) {
      if (started) {
        blst_fp12_mul(&acc, &acc, &table[nib]);
      } else {
        acc = table[nib];
        started = true;
      }
    }
  }
  return Gt(acc);
}

bool Gt::is_identity() const { return blst_fp12_is_one(&v_); }
bool Gt::operator==(const Gt& o) const { return blst_fp12_is_equal(&v_, &o.v_); }

Bytes Gt::to_bytes() const {
  Bytes out(kBytes);
  blst_bendian_from_fp12(out.data(), &v_);
  return out;
}

Gt Gt::from_bytes(ByteView b) {
  if (b.size() != kBytes) throw Error(Errc::kDecode, "Gt element has wrong width");
  blst_fp12 v;
  const uint8_t* p = b.data();
  // Mirrors blst_bendian_from_fp12's coefficient order.
  for (size_t i = 0; i < 3; ++i) {
    for (size_t j = 0; j < 2; ++j) {
      blst_fp_from_bendian(&v.fp6[j].fp2[i].fp[0], p);
      p += 48;
      blst_fp_from_bendian(&v.fp6[j].fp2[i].fp[1], p);
      p += 48;
    }
  }
  Gt r(v);
  // Re-encoding catches unreduced coordinates.
  if (r.to_bytes() != Bytes(b.begin(), b.end())) throw Error(Errc::kDecode, "non-canonical Gt encoding");
  if (!blst_fp12_in_group(&v)) throw Error(Errc::kDecode, "Gt element outside subgroup");
  return r;
}

Gt pairing(const G1& a, const G2& b) {
  if (a.is_identity() || b.is_identity()) return Gt();
  blst_p1_affine pa;
  blst_p2_affine pb;
  blst_p1_to_affine(&pa, &a.raw());
  blst_p2_to_affine(&pb, &b.raw());
  blst_fp12 ml, out;
  blst_miller_loop(&ml, &pb, &pa);
  blst_final_exp(&out, &ml);
  return Gt(out);
}

// ---- toy group ----

const ToyGroup& ToyGroup::for_field(const Field& f) {
  static std::mutex mu;
  static auto* groups = new std::map<const Field*, std::unique_ptr<ToyGroup>>();
  std::lock_guard<std::mutex> lock(mu);
  auto it = groups->find(&f);
  if (it != groups->end()) return *it->second;
  if (!f.is_toy()) throw Error(Errc::kInvalidConfig, "toy group requested for a real field");

  const mpz_class& q = f.modulus();
  mpz_class k = 2;
  mpz_class p = k * q + 1;
  while (mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) {
    k += 2;
    p = k * q + 1;
  }
  auto lift = [&](mpz_class seed) {
    // seed^k has order dividing q; skip degenerate seeds.
    for (;; ++seed) {
      mpz_class e;
      mpz_powm(e.get_mpz_t(), seed.get_mpz_t(), k.get_mpz_t(), p.get_mpz_t());
      if (e != 1) return e;
    }
  };
  auto grp = std::make_unique<ToyGroup>();
  grp->field = &f;
  grp->p = p;
  grp->g = lift(2);
  Scalar hs = hash_to_scalar(kPedersenTag, as_bytes(q.get_str()));
  mpz_class seed = hs.value() + 3;
  grp->h = lift(seed);
  if (grp->h == grp->g) grp->h = lift(seed + 1);
  grp->byte_len = (mpz_sizeinbase(p.get_mpz_t(), 2) + 7) / 8;
  auto [pos, _] = groups->emplace(&f, std::move(grp));
  return *pos->second;
}

ToyElem ToyElem::operator*(const ToyElem& o) const {
  if (grp_ != o.grp_) throw Error(Errc::kFieldMismatch, "toy elements from different groups");
  mpz_class r = v_ * o.v_;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), grp_->p.get_mpz_t());
  return ToyElem(*grp_, r);
}

ToyElem ToyElem::inverse() const {
  mpz_class r;
  mpz_invert(r.get_mpz_t(), v_.get_mpz_t(), grp_->p.get_mpz_t());
  return ToyElem(*grp_, r);
}

ToyElem ToyElem::pow(const Scalar& s) const {
  mpz_class r;
  mpz_powm(r.get_mpz_t(), v_.get_mpz_t(), s.value().get_mpz_t(), grp_->p.get_mpz_t());
  return ToyElem(*grp_, r);
}

Bytes ToyElem::to_bytes() const {
  Bytes out(grp_->byte_len, 0);
  size_t count = 0;
  Bytes tmp(out.size());
  mpz_export(tmp.data(), &count, 1, 1, 1, 0, v_.get_mpz_t());
  std::copy(tmp.begin(), tmp.begin() + count, out.end() - count);
  return out;
}

ToyElem ToyElem::decode(ByteView b) const {
  if (b.size() != grp_->byte_len) throw Error(Errc::kDecode, "toy element has wrong width");
  mpz_class v;
  mpz_import(v.get_mpz_t(), b.size(), 1, 1, 1, 0, b.data());
  mpz_class chk;
  if (v == 0 || v >= grp_->p) throw Error(Errc::kDecode, "toy element out of range");
  mpz_powm(chk.get_mpz_t(), v.get_mpz_t(), grp_->field->modulus().get_mpz_t(), grp_->p.get_mpz_t());
  if (chk != 1) throw Error(Errc::kDecode, "toy element outside subgroup");
  return ToyElem(*grp_, v);
}

const PairingContext& PairingContext::get() {
  static const PairingContext* ctx = [] {
    auto* c = new PairingContext{};
    c->field = &Field::bls12_381();
    c->g = G1::generator();
    c->h = G1::hash_to_group(kPedersenTag, as_bytes("h"));
    c->g2 = G2::generator();
    c->gt = pairing(c->g, c->g2);
    return c;
  }();
  return *ctx;
}

CommitKey<ToyElem> toy_commit_key(const Field& f) {
  const ToyGroup& grp = ToyGroup::for_field(f);
  return {&f, ToyElem(grp, grp.g), ToyElem(grp, grp.h)};
}

}  // namespace sae
