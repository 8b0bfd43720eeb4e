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

#include "sae/vss/mpc.hpp"

#include <algorithm>

#include "sae/algebra/hash.hpp"

namespace sae::vss {

using transport::Inbox;
using transport::Message;
using transport::NodeId;

std::string_view behavior_name(Behavior b) {
  switch (b) {
    case Behavior::kHonest: return "honest";
    case Behavior::kWrongMultiplyShare: return "wrong-multiply-share";
    case Behavior::kSilentDrop: return "silent-drop";
    case Behavior::kBadDealing: return "bad-dealing";
    case Behavior::kBadExponentContribution: return "bad-exponent-contribution";
  }
  return "unknown";
}

Behavior parse_behavior(std::string_view name) {
  for (Behavior b : {Behavior::kHonest, Behavior::kWrongMultiplyShare, Behavior::kSilentDrop,
                     Behavior::kBadDealing, Behavior::kBadExponentContribution}) {
    if (behavior_name(b) == name) return b;
  }
  throw Error(Errc::kInvalidConfig, "unknown behavior '" + std::string(name) + "'");
}

std::vector<NodeId> escrow_ids(const ProtocolConfig& cfg) {
  std::vector<NodeId> out;
  for (NodeId j = 1; j <= cfg.n; ++j) out.push_back(j);
  return out;
}

namespace {

bool contains(const std::vector<NodeId>& v, NodeId x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

// Binds a proof to (session, round, prover).
Bytes proof_context(const std::string& session, uint32_t round, NodeId prover) {
  ByteWriter w;
  w.str(session).u32(round).u32(prover);
  return w.take();
}

}  // namespace

// ---- context ----

template <typename G>
MpcContext<G>::MpcContext(const CommitKey<G>& ck, const ProtocolConfig& cfg,
                          transport::Endpoint& ep, Rng& rng, Behavior behavior)
    : ck_(ck), cfg_(cfg), ep_(ep), rng_(rng), behavior_(behavior), escrows_(escrow_ids(cfg)) {
  if (ep.self() < 1 || ep.self() > cfg.n) throw Error(Errc::kInvalidConfig, "MPC party must be an escrow");
}

template <typename G>
void MpcContext<G>::send(NodeId to, std::string_view type, const Bytes& body) {
  if (behavior_ == Behavior::kSilentDrop) return;
  ep_.send(to, type, body);
}

template <typename G>
void MpcContext<G>::send_escrows(std::string_view type, const Bytes& body) {
  for (NodeId j : escrows_) {
    if (j != index()) send(j, type, body);
  }
}

template <typename G>
Inbox MpcContext<G>::end_round() {
  Inbox in = ep_.end_round();
  ++rounds_;
  for (NodeId j : in.timed_out()) {
    if (contains(escrows_, j)) {
      throw Error(Errc::kTimeout, "escrow " + std::to_string(j) + " missed round " +
                                      std::to_string(ep_.round() - 1) + " of " + ep_.session());
    }
  }
  return in;
}

template <typename G>
void MpcContext<G>::report(uint32_t culprit, std::string_view phase) {
  for (const AbortReport& r : reports_) {
    if (r.culprit == culprit && r.phase == phase) return;
  }
  reports_.push_back(AbortReport{culprit, std::string(phase)});
}

// ---- proofs ----

template <typename G, typename B>
Bytes DleqProof<G, B>::encode() const {
  ByteWriter w;
  w.bytes(t1.to_bytes()).bytes(t2.to_bytes()).bytes(z1.to_bytes()).bytes(z2.to_bytes());
  return w.take();
}

template <typename G, typename B>
DleqProof<G, B> DleqProof<G, B>::decode(const G& gproto, const B& bproto, const Field& f,
                                        ByteView b) {
  ByteReader r(b);
  DleqProof p{gproto.decode(r.bytes(4096)), bproto.decode(r.bytes(4096)), f.from_bytes(r.bytes(256)),
              f.from_bytes(r.bytes(256))};
  r.expect_done();
  return p;
}

namespace {

template <typename G, typename B>
Scalar dleq_challenge(const Field& f, const B& base, const G& c, const B& y, const G& t1,
                      const B& t2, ByteView context) {
  Transcript t("dleq");
  t.append("ctx", context)
      .append("base", base.to_bytes())
      .append("c", c.to_bytes())
      .append("y", y.to_bytes())
      .append("t1", t1.to_bytes())
      .append("t2", t2.to_bytes());
  return t.challenge(f);
}

}  // namespace

template <typename G, typename B>
DleqProof<G, B> prove_dleq(const CommitKey<G>& ck, const B& base, const G& c, const B& y,
                           const Scalar& x, const Scalar& r, ByteView context, Rng& rng) {
  const Field& f = *ck.field;
  Scalar a = f.random(rng), b = f.random(rng);
  G t1 = ck.commit(a, b);
  B t2 = base.pow(a);
  Scalar ch = dleq_challenge(f, base, c, y, t1, t2, context);
  return DleqProof<G, B>{t1, t2, a + ch * x, b + ch * r};
}

template <typename G, typename B>
bool verify_dleq(const CommitKey<G>& ck, const B& base, const G& c, const B& y,
                 const DleqProof<G, B>& proof, ByteView context) {
  const Field& f = *ck.field;
  Scalar ch = dleq_challenge(f, base, c, y, proof.t1, proof.t2, context);
  if (ck.commit(proof.z1, proof.z2) != proof.t1 * c.pow(ch)) return false;
  return base.pow(proof.z1) == proof.t2 * y.pow(ch);
}

template <typename G>
Bytes ProductProof<G>::encode() const {
  ByteWriter w;
  w.bytes(t1.to_bytes()).bytes(t2.to_bytes());
  w.bytes(zx.to_bytes()).bytes(za.to_bytes()).bytes(zz.to_bytes());
  return w.take();
}

template <typename G>
ProductProof<G> ProductProof<G>::decode(const G& proto, const Field& f, ByteView b) {
  ByteReader r(b);
  ProductProof p;
  p.t1 = proto.decode(r.bytes(4096));
  p.t2 = proto.decode(r.bytes(4096));
  p.zx = f.from_bytes(r.bytes(256));
  p.za = f.from_bytes(r.bytes(256));
  p.zz = f.from_bytes(r.bytes(256));
  r.expect_done();
  return p;
}

namespace {

template <typename G>
Scalar product_challenge(const Field& f, const G& a, const G& b, const G& d, const G& t1,
                         const G& t2, ByteView context) {
  Transcript t("product");
  t.append("ctx", context)
      .append("a", a.to_bytes())
      .append("b", b.to_bytes())
      .append("d", d.to_bytes())
      .append("t1", t1.to_bytes())
      .append("t2", t2.to_bytes());
  return t.challenge(f);
}

}  // namespace

template <typename G>
ProductProof<G> prove_product(const CommitKey<G>& ck, const G& a, const G& b, const G& d,
                              const Scalar& x, const Scalar& ra, const Scalar& z, ByteView context,
                              Rng& rng) {
  const Field& f = *ck.field;
  Scalar u = f.random(rng), v = f.random(rng), w = f.random(rng);
  ProductProof<G> p;
  p.t1 = ck.commit(u, v);
  p.t2 = b.pow(u) * ck.h.pow(w);
  Scalar ch = product_challenge(f, a, b, d, p.t1, p.t2, context);
  p.zx = u + ch * x;
  p.za = v + ch * ra;
  p.zz = w + ch * z;
  return p;
}

template <typename G>
bool verify_product(const CommitKey<G>& ck, const G& a, const G& b, const G& d,
                    const ProductProof<G>& p, ByteView context) {
  const Field& f = *ck.field;
  Scalar ch = product_challenge(f, a, b, d, p.t1, p.t2, context);
  if (ck.commit(p.zx, p.za) != p.t1 * a.pow(ch)) return false;
  return b.pow(p.zx) * ck.h.pow(p.zz) == p.t2 * d.pow(ch);
}

// ---- verifiable dealing exchange ----

template <typename G>
VssExchange<G> run_vss_exchange(const CommitKey<G>& ck, transport::Endpoint& ep,
                                const VssExchangeSpec<G>& spec) {
  const Field& f = *ck.field;
  const NodeId self = ep.self();
  const bool dealer = contains(spec.dealers, self);
  const bool receiver = contains(spec.receivers, self);
  const bool silent = spec.behavior == Behavior::kSilentDrop;
  const std::string t_commit = spec.tag + "/commit";
  const std::string t_share = spec.tag + "/share";
  const std::string t_complain = spec.tag + "/complain";
  const std::string t_reveal = spec.tag + "/reveal";

  auto send = [&](NodeId to, const std::string& type, const Bytes& body) {
    if (!silent && to != self) ep.send(to, type, body);
  };
  auto send_audience = [&](const std::string& type, const Bytes& body) {
    for (NodeId a : spec.audience) send(a, type, body);
  };

  auto close_round = [&]() { return spec.close_round ? spec.close_round() : ep.end_round(); };

  VssExchange<G> out;

  // Round 1: commitments to everyone, shares privately.
  std::map<NodeId, Share> handed;  // what this dealer actually sent to each receiver
  if (dealer) {
    if (spec.mine == nullptr || spec.mine->degree != spec.degree) {
      throw Error(Errc::kInvalidConfig, "dealer without a matching dealing");
    }
    ByteWriter w;
    w.bytes(spec.mine->commitments.encode()).bytes(spec.my_extra);
    send_audience(t_commit, w.view());
    NodeId victim = 0;
    if (spec.behavior == Behavior::kBadDealing) {
      // The next receiver after self, wrapping around.
      for (NodeId r : spec.receivers) {
        if (r > self && (victim == 0 || r < victim)) victim = r;
      }
      if (victim == 0) {
        for (NodeId r : spec.receivers) {
          if (r != self && (victim == 0 || r < victim)) victim = r;
        }
      }
    }
    for (NodeId r : spec.receivers) {
      if (r < 1 || r > spec.mine->shares.size()) throw Error(Errc::kInvalidConfig, "receiver out of range");
      Share s = spec.mine->shares[r - 1];
      if (r == victim) s.value = s.value + f.one();
      handed[r] = s;
      send(r, t_share, encode_share(s));
    }
  }
  Inbox in1 = close_round();

  std::set<NodeId> complain_against;
  for (NodeId d : spec.dealers) {
    Commitments<G> c;
    Bytes extra;
    if (d == self && silent) {
      // Nobody saw this dealing; agree with the peers that disqualify it.
      out.disqualified.insert(d);
      continue;
    }
    if (d == self) {
      c = spec.mine->commitments;
      extra = spec.my_extra;
    } else {
      const Message* m = in1.get(d, t_commit);
      if (m == nullptr) {
        out.disqualified.insert(d);
        continue;
      }
      try {
        ByteReader r(m->body);
        c = Commitments<G>::decode(ck.g, r.bytes(), spec.degree);
        extra = r.bytes();
        r.expect_done();
      } catch (const Error&) {
        out.disqualified.insert(d);
        continue;
      }
      if (spec.check_extra && !spec.check_extra(d, c, extra)) {
        out.disqualified.insert(d);
        continue;
      }
    }
    out.commitments[d] = c;
    out.extra[d] = std::move(extra);
    if (!receiver) continue;
    bool ok = false;
    Share sh;
    if (d == self) {
      sh = handed.at(self);
      ok = verify_share(ck, c, sh);
    } else if (const Message* m = in1.get(d, t_share)) {
      try {
        sh = decode_share(f, m->body);
        ok = sh.index == self && verify_share(ck, c, sh);
      } catch (const Error&) {
        ok = false;
      }
    }
    if (ok) {
      out.received[d] = SharedScalar<G>{sh, c};
    } else {
      complain_against.insert(d);
    }
  }

  // Round 2: every receiver publishes its (possibly empty) complaint list.
  if (receiver) {
    ByteWriter w;
    w.u32(static_cast<uint32_t>(complain_against.size()));
    for (NodeId d : complain_against) w.u32(d);
    send_audience(t_complain, w.view());
  }
  Inbox in2 = close_round();

  std::map<NodeId, std::set<NodeId>> complaints;
  for (NodeId d : complain_against) complaints[d].insert(self);
  for (NodeId r : spec.receivers) {
    if (r == self) continue;
    const Message* m = in2.get(r, t_complain);
    if (m == nullptr) continue;
    try {
      ByteReader rd(m->body);
      uint32_t count = rd.u32();
      if (count > spec.dealers.size()) continue;
      for (uint32_t i = 0; i < count; ++i) {
        NodeId d = rd.u32();
        if (d != r && contains(spec.dealers, d)) complaints[d].insert(r);
      }
    } catch (const Error&) {
      continue;
    }
  }

  // Round 3: dealers publicly open the complained-about shares.
  if (dealer && complaints.count(self)) {
    ByteWriter w;
    w.u32(static_cast<uint32_t>(complaints[self].size()));
    for (NodeId c : complaints[self]) w.bytes(encode_share(handed.at(c)));
    send_audience(t_reveal, w.view());
  }
  Inbox in3 = close_round();

  for (const auto& [d, who] : complaints) {
    if (out.disqualified.count(d) || !out.commitments.count(d)) continue;
    std::map<NodeId, Share> revealed;
    if (d == self) {
      for (NodeId c : who) revealed[c] = handed.at(c);
    } else if (const Message* m = in3.get(d, t_reveal)) {
      try {
        ByteReader rd(m->body);
        uint32_t count = rd.u32();
        if (count > spec.receivers.size()) count = 0;
        for (uint32_t i = 0; i < count; ++i) {
          Share s = decode_share(f, rd.bytes(1024));
          revealed[s.index] = s;
        }
      } catch (const Error&) {
        revealed.clear();
      }
    }
    bool good = true;
    for (NodeId c : who) {
      auto it = revealed.find(c);
      if (it == revealed.end() || !verify_share(ck, out.commitments[d], it->second)) {
        good = false;
        break;
      }
    }
    if (!good) {
      out.disqualified.insert(d);
    } else if (receiver && who.count(self)) {
      out.received[d] = SharedScalar<G>{revealed.at(self), out.commitments[d]};
    }
  }

  for (NodeId d : out.disqualified) {
    out.received.erase(d);
    out.commitments.erase(d);
    out.extra.erase(d);
  }
  return out;
}

// ---- protocols ----

template <typename G>
SharedScalar<G> random_coin_toss(MpcContext<G>& ctx) {
  const auto& cfg = ctx.cfg();
  Dealing<G> mine = deal_vss(ctx.ck(), ctx.field().random(ctx.rng()), cfg, CommitMode::kPedersen, ctx.rng());
  VssExchangeSpec<G> spec;
  spec.tag = "coin";
  spec.degree = cfg.f;
  spec.dealers = ctx.escrows();
  spec.receivers = ctx.escrows();
  spec.audience = ctx.escrows();
  spec.mine = &mine;
  spec.behavior = ctx.behavior();
  spec.close_round = [&] { return ctx.end_round(); };
  VssExchange<G> ex = run_vss_exchange(ctx.ck(), ctx.endpoint(), spec);
  for (NodeId d : ex.disqualified) ctx.report(d, "coin_toss");
  if (ex.received.size() < cfg.f + 1) {
    uint32_t culprit = ex.disqualified.empty() ? 0 : *ex.disqualified.begin();
    throw IdentifiableAbort(AbortReport{culprit, "coin_toss"});
  }
  auto it = ex.received.begin();
  SharedScalar<G> acc = it->second;
  for (++it; it != ex.received.end(); ++it) acc = add_local(acc, it->second);
  return acc;
}

template <typename G>
SharedScalar<G> multiply(MpcContext<G>& ctx, const SharedScalar<G>& x, const SharedScalar<G>& y) {
  const auto& cfg = ctx.cfg();
  const Field& f = ctx.field();
  const auto& ck = ctx.ck();
  const uint32_t self = ctx.index();
  if (x.share.index != self || y.share.index != self) {
    throw Error(Errc::kIndexMismatch, "multiply operands do not belong to this party");
  }
  const uint32_t r0 = ctx.endpoint().round();
  const std::string& session = ctx.endpoint().session();

  Scalar d = x.share.value * y.share.value;
  std::vector<Scalar> coeffs{ctx.behavior() == Behavior::kWrongMultiplyShare ? d + f.one() : d};
  std::vector<Scalar> blind{f.random(ctx.rng())};
  for (uint32_t k = 1; k <= cfg.f; ++k) {
    coeffs.push_back(f.random(ctx.rng()));
    blind.push_back(f.random(ctx.rng()));
  }
  Dealing<G> mine = deal_vss_with(ck, coeffs, blind, cfg.n);
  // D_0 = g^{xy} h^{s_0} = B^x h^{s_0 - b x}
  Scalar z = blind[0] - y.share.blinding * x.share.value;
  G a_self = x.commitments.eval(f, self);
  G b_self = y.commitments.eval(f, self);
  ProductProof<G> proof = prove_product(ck, a_self, b_self, mine.commitments.c[0], x.share.value,
                                        x.share.blinding, z, proof_context(session, r0, self),
                                        ctx.rng());

  VssExchangeSpec<G> spec;
  spec.tag = "mul";
  spec.degree = cfg.f;
  spec.dealers = ctx.escrows();
  spec.receivers = ctx.escrows();
  spec.audience = ctx.escrows();
  spec.mine = &mine;
  spec.my_extra = proof.encode();
  spec.behavior = ctx.behavior();
  spec.close_round = [&] { return ctx.end_round(); };
  spec.check_extra = [&](NodeId dealer, const Commitments<G>& c, ByteView extra) {
    try {
      ProductProof<G> p = ProductProof<G>::decode(ck.g, f, extra);
      return verify_product(ck, x.commitments.eval(f, dealer), y.commitments.eval(f, dealer),
                            c.c[0], p, proof_context(session, r0, dealer));
    } catch (const Error&) {
      return false;
    }
  };
  VssExchange<G> ex = run_vss_exchange(ck, ctx.endpoint(), spec);
  for (NodeId dq : ex.disqualified) ctx.report(dq, "multiply");
  if (!ex.disqualified.empty()) {
    throw IdentifiableAbort(AbortReport{*ex.disqualified.begin(), "multiply"});
  }
  if (ex.received.size() != cfg.n) throw Error(Errc::kInvalidConfig, "multiply lost a resharing");

  // Degree reduction: the local products lie on a degree-2f polynomial, so
  // all n resharings are needed.
  std::vector<uint32_t> idx = ctx.escrows();
  std::vector<Scalar> lambda = lagrange_at_zero(f, idx);
  SharedScalar<G> out;
  out.share = Share{self, f.zero(), f.zero()};
  out.commitments.c.assign(cfg.f + 1, ck.identity());
  for (size_t i = 0; i < idx.size(); ++i) {
    const SharedScalar<G>& part = ex.received.at(idx[i]);
    out.share = add_local(out.share, scale_local(lambda[i], part.share));
    for (uint32_t k = 0; k <= cfg.f; ++k) {
      out.commitments.c[k] = out.commitments.c[k] * part.commitments.c[k].pow(lambda[i]);
    }
  }
  return out;
}

template <typename G>
Scalar open(MpcContext<G>& ctx, const SharedScalar<G>& x) {
  const auto& cfg = ctx.cfg();
  ctx.send_escrows("open", encode_share(x.share));
  Inbox in = ctx.end_round();
  std::vector<Share> valid;
  if (verify_share(ctx.ck(), x.commitments, x.share)) valid.push_back(x.share);
  for (NodeId j : ctx.escrows()) {
    if (j == ctx.index()) continue;
    const Message* m = in.get(j, "open");
    bool ok = false;
    if (m != nullptr) {
      try {
        Share s = decode_share(ctx.field(), m->body);
        ok = s.index == j && verify_share(ctx.ck(), x.commitments, s);
        if (ok) valid.push_back(s);
      } catch (const Error&) {
      }
    }
    if (!ok) ctx.report(j, "open");
  }
  if (valid.size() < cfg.f + 1) {
    throw IdentifiableAbort(AbortReport{ctx.reports().empty() ? 0 : ctx.reports().back().culprit, "open"});
  }
  return combine_shares(valid, cfg.f);
}

namespace {

template <typename B>
B interpolate_in_exponent(const Field& f, const std::map<uint32_t, B>& contributions, uint32_t f_bound) {
  std::vector<uint32_t> idx;
  for (const auto& [j, _] : contributions) {
    idx.push_back(j);
    if (idx.size() == f_bound + 1) break;
  }
  std::vector<Scalar> lambda = lagrange_at_zero(f, idx);
  B acc = contributions.begin()->second.identity();
  for (size_t i = 0; i < idx.size(); ++i) acc = acc * contributions.at(idx[i]).pow(lambda[i]);
  return acc;
}

}  // namespace

template <typename G, typename B>
std::optional<B> public_exponentiate(MpcContext<G>& ctx, const B& base, const SharedScalar<G>& x,
                                     Recipient to) {
  const auto& ck = ctx.ck();
  const Field& f = ctx.field();
  const uint32_t self = ctx.index();
  const uint32_t r0 = ctx.endpoint().round();
  const std::string& session = ctx.endpoint().session();

  B y = base.pow(x.share.value);
  G c = x.commitments.eval(f, self);
  DleqProof<G, B> proof = prove_dleq(ck, base, c, y, x.share.value, x.share.blinding,
                                     proof_context(session, r0, self), ctx.rng());
  B sent = ctx.behavior() == Behavior::kBadExponentContribution ? y * base : y;
  ByteWriter w;
  w.bytes(sent.to_bytes()).bytes(proof.encode());
  if (!to.all_escrows) {
    w.bytes(x.commitments.encode());
    ctx.send(to.client, "pexp", w.view());
    ctx.end_round();
    return std::nullopt;
  }
  ctx.send_escrows("pexp", w.view());
  Inbox in = ctx.end_round();

  std::map<uint32_t, B> good;
  good.emplace(self, y);
  for (NodeId j : ctx.escrows()) {
    if (j == self) continue;
    const Message* m = in.get(j, "pexp");
    bool ok = false;
    if (m != nullptr) {
      try {
        ByteReader r(m->body);
        B yj = base.decode(r.bytes(4096));
        auto pj = DleqProof<G, B>::decode(ck.g, base, f, r.bytes(1 << 14));
        r.expect_done();
        ok = verify_dleq(ck, base, x.commitments.eval(f, j), yj, pj, proof_context(session, m->round, j));
        if (ok) good.emplace(j, yj);
      } catch (const Error&) {
      }
    }
    if (!ok) ctx.report(j, "public_exponentiate");
  }
  if (good.size() < ctx.cfg().f + 1) {
    throw IdentifiableAbort(AbortReport{ctx.reports().back().culprit, "public_exponentiate"});
  }
  return interpolate_in_exponent(f, good, ctx.cfg().f);
}

template <typename G, typename B>
B receive_exponentiation(const CommitKey<G>& ck, const ProtocolConfig& cfg, transport::Endpoint& ep,
                         const B& base) {
  return combine_exponentiation(ck, cfg, ep.session(), ep.end_round(), base);
}

template <typename G, typename B>
B combine_exponentiation(const CommitKey<G>& ck, const ProtocolConfig& cfg, const std::string& session,
                         const Inbox& in, const B& base) {
  const Field& f = *ck.field;
  struct Contribution {
    B y;
    DleqProof<G, B> proof;
    Bytes commitments;
    uint32_t round;
  };
  std::map<uint32_t, Contribution> got;
  std::map<Bytes, uint32_t> votes;
  size_t arrived = 0;
  for (NodeId j : escrow_ids(cfg)) arrived += in.get(j, "pexp") != nullptr ? 1 : 0;
  if (arrived < cfg.f + 1) throw Error(Errc::kTimeout, "too few exponentiation contributions arrived");
  for (NodeId j : escrow_ids(cfg)) {
    const Message* m = in.get(j, "pexp");
    if (m == nullptr) {
      throw IdentifiableAbort(AbortReport{j, "mac_delivery"}, Errc::kMacVerifyFailed);
    }
    try {
      ByteReader r(m->body);
      B yj = base.decode(r.bytes(4096));
      auto pj = DleqProof<G, B>::decode(ck.g, base, f, r.bytes(1 << 14));
      Bytes cm = r.bytes();
      r.expect_done();
      votes[cm]++;
      got.emplace(j, Contribution{yj, pj, std::move(cm), m->round});
    } catch (const Error&) {
      throw IdentifiableAbort(AbortReport{j, "mac_delivery"}, Errc::kMacVerifyFailed);
    }
  }
  const Bytes* agreed = nullptr;
  for (const auto& [cm, count] : votes) {
    if (count >= cfg.f + 1) agreed = &cm;
  }
  if (agreed == nullptr) {
    throw Error(Errc::kMacVerifyFailed, "escrows disagree on the commitment vector");
  }
  Commitments<G> commitments = Commitments<G>::decode(ck.g, *agreed, cfg.f);
  std::map<uint32_t, B> good;
  for (auto& [j, c] : got) {
    bool ok = c.commitments == *agreed &&
              verify_dleq(ck, base, commitments.eval(f, j), c.y, c.proof,
                          proof_context(session, c.round, j));
    if (!ok) throw IdentifiableAbort(AbortReport{j, "mac_delivery"}, Errc::kMacVerifyFailed);
    good.emplace(j, c.y);
  }
  return interpolate_in_exponent(f, good, cfg.f);
}

// ---- instantiations ----

#define SAE_INSTANTIATE_MPC(G)                                                                  \
  template class MpcContext<G>;                                                                 \
  template struct ProductProof<G>;                                                              \
  template ProductProof<G> prove_product(const CommitKey<G>&, const G&, const G&, const G&,     \
                                         const Scalar&, const Scalar&, const Scalar&, ByteView, \
                                         Rng&);                                                 \
  template bool verify_product(const CommitKey<G>&, const G&, const G&, const G&,               \
                               const ProductProof<G>&, ByteView);                               \
  template VssExchange<G> run_vss_exchange(const CommitKey<G>&, transport::Endpoint&,           \
                                           const VssExchangeSpec<G>&);                          \
  template SharedScalar<G> random_coin_toss(MpcContext<G>&);                                    \
  template SharedScalar<G> multiply(MpcContext<G>&, const SharedScalar<G>&,                     \
                                    const SharedScalar<G>&);                                    \
  template Scalar open(MpcContext<G>&, const SharedScalar<G>&);

#define SAE_INSTANTIATE_EXP(G, B)                                                               \
  template struct DleqProof<G, B>;                                                              \
  template DleqProof<G, B> prove_dleq(const CommitKey<G>&, const B&, const G&, const B&,        \
                                      const Scalar&, const Scalar&, ByteView, Rng&);            \
  template bool verify_dleq(const CommitKey<G>&, const B&, const G&, const B&,                  \
                            const DleqProof<G, B>&, ByteView);                                  \
  template std::optional<B> public_exponentiate(MpcContext<G>&, const B&, const SharedScalar<G>&, \
                                                Recipient);                                     \
  template B receive_exponentiation(const CommitKey<G>&, const ProtocolConfig&,                 \
                                    transport::Endpoint&, const B&);                            \
  template B combine_exponentiation(const CommitKey<G>&, const ProtocolConfig&,                 \
                                    const std::string&, const Inbox&, const B&);

SAE_INSTANTIATE_MPC(G1)
SAE_INSTANTIATE_MPC(ToyElem)
SAE_INSTANTIATE_EXP(G1, G1)
SAE_INSTANTIATE_EXP(G1, G2)
SAE_INSTANTIATE_EXP(G1, Gt)
SAE_INSTANTIATE_EXP(ToyElem, ToyElem)

#undef SAE_INSTANTIATE_MPC
#undef SAE_INSTANTIATE_EXP

}  // namespace sae::vss
