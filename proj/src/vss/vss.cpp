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

#include "sae/vss/vss.hpp"

#include <algorithm>
#include <set>

#include "sae/errors.hpp"

namespace sae::vss {

namespace {

Scalar eval_poly(const std::vector<Scalar>& coeffs, const Scalar& x) {
  Scalar acc = x.field().zero();
  for (size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
  return acc;
}

}  // namespace

Bytes encode_share(const Share& s) {
  ByteWriter w;
  w.u32(s.index).bytes(s.value.to_bytes()).bytes(s.blinding.to_bytes());
  return w.take();
}

Share decode_share(const Field& f, ByteView b) {
  ByteReader r(b);
  Share s;
  s.index = r.u32();
  s.value = f.from_bytes(r.bytes(256));
  s.blinding = f.from_bytes(r.bytes(256));
  r.expect_done();
  return s;
}

template <typename G>
G Commitments<G>::eval(const Field& f, uint32_t j) const {
  // Horner in the exponent: small exponents j keep each step cheap.
  Scalar sj = f.from_u64(j);
  G acc = c.back();
  for (size_t k = c.size() - 1; k-- > 0;) acc = acc.pow(sj) * c[k];
  return acc;
}

template <typename G>
Bytes Commitments<G>::encode() const {
  ByteWriter w;
  w.u32(static_cast<uint32_t>(c.size()));
  for (const G& e : c) w.bytes(e.to_bytes());
  return w.take();
}

template <typename G>
Commitments<G> Commitments<G>::decode(const G& proto, ByteView b, uint32_t expected_degree) {
  ByteReader r(b);
  uint32_t count = r.u32();
  if (count != expected_degree + 1) throw Error(Errc::kDecode, "commitment vector has wrong degree");
  Commitments<G> out;
  out.c.reserve(count);
  for (uint32_t k = 0; k < count; ++k) out.c.push_back(proto.decode(r.bytes(4096)));
  r.expect_done();
  return out;
}

template <typename G>
Dealing<G> deal_vss_with(const CommitKey<G>& ck, const std::vector<Scalar>& coeffs,
                         const std::vector<Scalar>& blinding_coeffs, uint32_t n) {
  if (coeffs.empty()) throw Error(Errc::kInvalidConfig, "empty polynomial");
  const Field& f = *ck.field;
  bool feldman = blinding_coeffs.empty();
  if (!feldman && blinding_coeffs.size() != coeffs.size()) {
    throw Error(Errc::kInvalidConfig, "blinding polynomial degree mismatch");
  }
  std::vector<Scalar> blind = feldman ? std::vector<Scalar>(coeffs.size(), f.zero()) : blinding_coeffs;
  Dealing<G> d;
  d.mode = feldman ? CommitMode::kFeldman : CommitMode::kPedersen;
  d.degree = static_cast<uint32_t>(coeffs.size()) - 1;
  for (size_t k = 0; k < coeffs.size(); ++k) {
    d.commitments.c.push_back(feldman ? ck.g.pow(coeffs[k]) : ck.commit(coeffs[k], blind[k]));
  }
  for (uint32_t j = 1; j <= n; ++j) {
    Scalar x = f.from_u64(j);
    d.shares.push_back(Share{j, eval_poly(coeffs, x), eval_poly(blind, x)});
  }
  return d;
}

template <typename G>
Dealing<G> deal_vss(const CommitKey<G>& ck, const Scalar& secret, const ProtocolConfig& cfg,
                    CommitMode mode, Rng& rng) {
  cfg.validate();
  const Field& f = *ck.field;
  std::vector<Scalar> coeffs{secret};
  std::vector<Scalar> blind;
  for (uint32_t k = 1; k <= cfg.f; ++k) coeffs.push_back(f.random(rng));
  if (mode == CommitMode::kPedersen) {
    for (uint32_t k = 0; k <= cfg.f; ++k) blind.push_back(f.random(rng));
  }
  return deal_vss_with(ck, coeffs, blind, cfg.n);
}

template <typename G>
bool verify_share(const CommitKey<G>& ck, const Commitments<G>& commitments, const Share& share) {
  if (share.index == 0 || commitments.c.empty()) return false;
  if (!share.value.valid() || !share.blinding.valid()) return false;
  if (share.value.field() != *ck.field || share.blinding.field() != *ck.field) return false;
  return ck.commit(share.value, share.blinding) == commitments.eval(*ck.field, share.index);
}

std::vector<Scalar> lagrange_at_zero(const Field& f, const std::vector<uint32_t>& indices) {
  std::vector<Scalar> out;
  out.reserve(indices.size());
  for (uint32_t j : indices) {
    Scalar num = f.one(), den = f.one();
    Scalar sj = f.from_u64(j);
    for (uint32_t m : indices) {
      if (m == j) continue;
      Scalar sm = f.from_u64(m);
      num *= sm;
      den *= sm - sj;
    }
    out.push_back(num * den.inverse());
  }
  return out;
}

Scalar combine_shares(const std::vector<Share>& shares, uint32_t f) {
  std::vector<const Share*> picked;
  std::set<uint32_t> seen;
  std::vector<const Share*> sorted;
  for (const Share& s : shares) sorted.push_back(&s);
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->index < b->index; });
  for (const Share* s : sorted) {
    if (s->index == 0 || !seen.insert(s->index).second) continue;
    picked.push_back(s);
    if (picked.size() == f + 1) break;
  }
  if (picked.size() < f + 1) {
    throw Error(Errc::kInsufficientShares, "need " + std::to_string(f + 1) + " distinct shares, have " +
                                               std::to_string(picked.size()));
  }
  const Field& field = picked[0]->value.field();
  std::vector<uint32_t> idx;
  for (const Share* s : picked) idx.push_back(s->index);
  auto lambda = lagrange_at_zero(field, idx);
  Scalar acc = field.zero();
  for (size_t i = 0; i < picked.size(); ++i) acc += lambda[i] * picked[i]->value;
  return acc;
}

template <typename G>
Scalar combine_shares(const CommitKey<G>& ck, const Commitments<G>& commitments,
                      const std::vector<Share>& shares, uint32_t f) {
  for (const Share& s : shares) {
    if (!verify_share(ck, commitments, s)) {
      throw IdentifiableAbort(AbortReport{s.index, "combine_shares"}, Errc::kInconsistentShares);
    }
  }
  return combine_shares(shares, f);
}

Share add_local(const Share& a, const Share& b) {
  if (a.index != b.index) throw Error(Errc::kIndexMismatch, "adding shares of different parties");
  return Share{a.index, a.value + b.value, a.blinding + b.blinding};
}

Share scale_local(const Scalar& c, const Share& a) {
  return Share{a.index, c * a.value, c * a.blinding};
}

template <typename G>
SharedScalar<G> add_local(const SharedScalar<G>& a, const SharedScalar<G>& b) {
  if (a.commitments.c.size() != b.commitments.c.size()) {
    throw Error(Errc::kIndexMismatch, "adding sharings of different degree");
  }
  SharedScalar<G> out;
  out.share = add_local(a.share, b.share);
  for (size_t k = 0; k < a.commitments.c.size(); ++k) {
    out.commitments.c.push_back(a.commitments.c[k] * b.commitments.c[k]);
  }
  return out;
}

template <typename G>
SharedScalar<G> scale_local(const Scalar& c, const SharedScalar<G>& a) {
  SharedScalar<G> out;
  out.share = scale_local(c, a.share);
  for (const G& e : a.commitments.c) out.commitments.c.push_back(e.pow(c));
  return out;
}

template <typename G>
SharedScalar<G> public_constant(const CommitKey<G>& ck, const Scalar& x, uint32_t index,
                                uint32_t degree) {
  SharedScalar<G> out;
  out.share = Share{index, x, ck.field->zero()};
  out.commitments.c.push_back(ck.g.pow(x));
  for (uint32_t k = 0; k < degree; ++k) out.commitments.c.push_back(ck.identity());
  return out;
}

#define SAE_INSTANTIATE_VSS(G)                                                                   \
  template struct Commitments<G>;                                                                \
  template Dealing<G> deal_vss(const CommitKey<G>&, const Scalar&, const ProtocolConfig&,        \
                               CommitMode, Rng&);                                                \
  template Dealing<G> deal_vss_with(const CommitKey<G>&, const std::vector<Scalar>&,             \
                                    const std::vector<Scalar>&, uint32_t);                       \
  template bool verify_share(const CommitKey<G>&, const Commitments<G>&, const Share&);          \
  template Scalar combine_shares(const CommitKey<G>&, const Commitments<G>&,                     \
                                 const std::vector<Share>&, uint32_t);                           \
  template SharedScalar<G> add_local(const SharedScalar<G>&, const SharedScalar<G>&);            \
  template SharedScalar<G> scale_local(const Scalar&, const SharedScalar<G>&);                   \
  template SharedScalar<G> public_constant(const CommitKey<G>&, const Scalar&, uint32_t, uint32_t);

SAE_INSTANTIATE_VSS(G1)
SAE_INSTANTIATE_VSS(ToyElem)

#undef SAE_INSTANTIATE_VSS

}  // namespace sae::vss
