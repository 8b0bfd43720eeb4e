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

#include "sae/algebra/field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include "sae/algebra/rng.hpp"
#include "sae/errors.hpp"

namespace sae {

namespace {

constexpr char kBls12381Order[] =
    "73eda753299d7d483339d80809a1d80553bda402fffe5bfeffffffff00000001";

mpz_class mpz_from_be(ByteView b) {
  mpz_class v;
  if (!b.empty()) mpz_import(v.get_mpz_t(), b.size(), 1, 1, 1, 0, b.data());
  return v;
}

}  // namespace

Field::Field(mpz_class q, bool toy) : q_(std::move(q)), toy_(toy) {
  bit_len_ = mpz_sizeinbase(q_.get_mpz_t(), 2);
  byte_len_ = (bit_len_ + 7) / 8;
}

const Field& Field::bls12_381() {
  static const Field* f = new Field(mpz_class(kBls12381Order, 16), false);
  return *f;
}

const Field& Field::toy(uint64_t q) {
  static std::mutex mu;
  static auto* fields = new std::map<uint64_t, std::unique_ptr<Field>>();
  std::lock_guard<std::mutex> lock(mu);
  auto it = fields->find(q);
  if (it != fields->end()) return *it->second;
  mpz_class mq(static_cast<unsigned long>(q));
  if (q < 3 || q % 2 == 0 || mpz_probab_prime_p(mq.get_mpz_t(), 30) == 0) {
    throw Error(Errc::kInvalidConfig, "toy modulus must be an odd prime");
  }
  auto [pos, _] = fields->emplace(q, std::unique_ptr<Field>(new Field(mq, true)));
  return *pos->second;
}

Scalar Field::zero() const { return Scalar(*this, 0); }
Scalar Field::one() const { return Scalar(*this, 1); }
Scalar Field::from_u64(uint64_t v) const {
  mpz_class m;
  mpz_import(m.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return from_mpz(m);
}

Scalar Field::from_mpz(const mpz_class& v) const {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), q_.get_mpz_t());
  return Scalar(*this, r);
}

Scalar Field::from_bytes(ByteView b) const {
  if (b.size() != byte_len_) throw Error(Errc::kDecode, "scalar has wrong width");
  mpz_class v = mpz_from_be(b);
  if (v >= q_) throw Error(Errc::kDecode, "scalar not reduced");
  return Scalar(*this, v);
}

Scalar Field::reduce(ByteView b) const { return from_mpz(mpz_from_be(b)); }

Scalar Field::random(Rng& rng) const {
  // 128 extra bits keep the reduction bias negligible.
  Bytes wide = rng.bytes(byte_len_ + 16);
  return reduce(wide);
}

Scalar::Scalar(const Field& f, mpz_class v) : f_(&f), v_(std::move(v)) {}

const Field& Scalar::field() const {
  if (f_ == nullptr) throw Error(Errc::kFieldMismatch, "uninitialized scalar");
  return *f_;
}

void Scalar::check_same(const Scalar& o) const {
  if (f_ == nullptr || f_ != o.f_) throw Error(Errc::kFieldMismatch, "scalars from different fields");
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same(o);
  mpz_class r = v_ + o.v_;
  if (r >= f_->modulus()) r -= f_->modulus();
  return Scalar(*f_, r);
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_same(o);
  mpz_class r = v_ - o.v_;
  if (r < 0) r += f_->modulus();
  return Scalar(*f_, r);
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same(o);
  mpz_class r = v_ * o.v_;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), f_->modulus().get_mpz_t());
  return Scalar(*f_, r);
}

Scalar Scalar::operator-() const {
  if (v_ == 0) return *this;
  return Scalar(field(), f_->modulus() - v_);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(Errc::kZeroInverse, "inverse of zero");
  mpz_class r;
  mpz_invert(r.get_mpz_t(), v_.get_mpz_t(), field().modulus().get_mpz_t());
  return Scalar(*f_, r);
}

Scalar Scalar::pow(uint64_t e) const {
  mpz_class r;
  mpz_class me;
  mpz_import(me.get_mpz_t(), 1, 1, sizeof(e), 0, 0, &e);
  mpz_powm(r.get_mpz_t(), v_.get_mpz_t(), me.get_mpz_t(), field().modulus().get_mpz_t());
  return Scalar(*f_, r);
}

bool Scalar::operator==(const Scalar& o) const { return f_ == o.f_ && v_ == o.v_; }

Bytes Scalar::to_bytes() const {
  Bytes out(field().byte_len(), 0);
  size_t count = 0;
  Bytes tmp(out.size());
  mpz_export(tmp.data(), &count, 1, 1, 1, 0, v_.get_mpz_t());
  std::copy(tmp.begin(), tmp.begin() + count, out.end() - count);
  return out;
}

void Scalar::to_le32(uint8_t out[32]) const {
  std::fill(out, out + 32, 0);
  size_t count = 0;
  if (mpz_sizeinbase(v_.get_mpz_t(), 256) > 32) throw Error(Errc::kFieldMismatch, "scalar wider than 256 bits");
  mpz_export(out, &count, -1, 1, -1, 0, v_.get_mpz_t());
}

size_t Scalar::bit_len() const { return v_ == 0 ? 0 : mpz_sizeinbase(v_.get_mpz_t(), 2); }

Scalar scalar_inverse(const Scalar& x) { return x.inverse(); }

}  // namespace sae
