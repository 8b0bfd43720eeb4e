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

#ifndef SAE_ALGEBRA_FIELD_HPP_
#define SAE_ALGEBRA_FIELD_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "sae/algebra/bytes.hpp"

namespace sae {

class Rng;
class Scalar;

// A prime modulus. Instances are interned and never destroyed, so Scalars may
// hold a raw pointer to their field.
class Field {
 public:
  // Order of the BLS12-381 prime-order subgroups.
  static const Field& bls12_381();
  // Small prime field for hand-checkable tests. Throws kInvalidConfig unless
  // q is an odd prime.
  static const Field& toy(uint64_t q);

  const mpz_class& modulus() const { return q_; }
  size_t byte_len() const { return byte_len_; }
  size_t bit_len() const { return bit_len_; }
  bool is_toy() const { return toy_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_u64(uint64_t v) const;
  Scalar from_mpz(const mpz_class& v) const;
  // Fixed-width big-endian, rejecting values >= q.
  Scalar from_bytes(ByteView b) const;
  // Any-width big-endian, reduced mod q.
  Scalar reduce(ByteView b) const;
  Scalar random(Rng& rng) const;

  bool operator==(const Field& o) const { return this == &o; }

 private:
  Field(mpz_class q, bool toy);

  mpz_class q_;
  size_t byte_len_;
  size_t bit_len_;
  bool toy_;
};

// Element of Z_q. Arithmetic between scalars of different fields throws
// kFieldMismatch.
class Scalar {
 public:
  Scalar() = default;
  Scalar(const Field& f, mpz_class v);

  const Field& field() const;
  const mpz_class& value() const { return v_; }
  bool valid() const { return f_ != nullptr; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  // Throws kZeroInverse on zero.
  Scalar inverse() const;
  Scalar pow(uint64_t e) const;

  bool is_zero() const { return v_ == 0; }
  bool operator==(const Scalar& o) const;
  bool operator<(const Scalar& o) const { return v_ < o.v_; }

  Bytes to_bytes() const;
  // Little-endian, exactly 32 bytes (the encoding blst expects).
  void to_le32(uint8_t out[32]) const;
  size_t bit_len() const;
  uint64_t to_u64() const { return v_.get_ui(); }
  std::string to_string() const { return v_.get_str(); }

 private:
  void check_same(const Scalar& o) const;

  const Field* f_ = nullptr;
  mpz_class v_;
};

Scalar scalar_inverse(const Scalar& x);

}  // namespace sae

#endif  // SAE_ALGEBRA_FIELD_HPP_
