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

// Prints one PASS/FAIL line per acceptance criterion. `--only N` runs one.

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>

#include "common/mpc_runner.hpp"
#include "sae/bucketing/bucketing.hpp"
#include "sae/dvrf/dvrf.hpp"
#include "sae/errors.hpp"
#include "sae/harness/fuzz.hpp"
#include "sae/harness/perf.hpp"
#include "sae/harness/scenario.hpp"
#include "sae/harness/tcp_transport.hpp"

namespace sae {
namespace {

using harness::Cluster;
using harness::ClusterOptions;
using harness::StepResult;
using Clock = std::chrono::steady_clock;

// Pinned tolerances.
constexpr size_t kEngineTrials = 1000;
constexpr double kEngineBudgetS = 300;
constexpr size_t kE2eTrials = 100;
constexpr double kE2eBudgetS = 1800;
constexpr size_t kDvrfSamples = 100;  // per escrow count
constexpr size_t kToyPairs = 100;
constexpr size_t kWitnesses = 100;
constexpr size_t kHonestRuns = 100;
constexpr size_t kIntegrityScenarios = 50;
constexpr double kTcpBudgetS = 60;
constexpr std::array<int64_t, 3> kDelaysMs{0, 50, 100};

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

// Convergence of every cluster built by the criteria, for criterion 9.
std::vector<std::pair<std::string, bool>> g_convergence;

void record(const std::string& name, const Cluster& c) { g_convergence.emplace_back(name, c.converged()); }

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

Bytes text(std::string_view s) { return Bytes(s.begin(), s.end()); }

client::Meta meta(const std::string& accused) { return {{"accused", accused}, {"category", "other"}}; }

std::string labels(const std::set<std::string>& s) {
  std::string out = "{";
  for (const auto& x : s) out += (out.size() > 1 ? "," : "") + x;
  return out + "}";
}

// ------------------------------------------------------------------ 1

void criterion1(Verdict& v) {
  harness::FuzzOptions o;
  o.trials = kEngineTrials;
  o.max_allegations = 12;
  o.max_classes = 4;
  o.max_threshold = 10;
  o.escrows = 3;
  harness::FuzzReport engine = harness::fuzz_bucketing(o);
  v.detail << "engine " << engine.trials << " trials " << engine.divergences << " divergences " << engine.seconds
           << " s;";
  v.require(engine.trials == kEngineTrials && engine.divergences == 0, "engine divergence");
  v.require(engine.seconds < kEngineBudgetS, "engine over budget");
  if (engine.first_divergence) v.detail << "\n" << *engine.first_divergence;

  o.trials = kE2eTrials;
  o.end_to_end = true;
  harness::FuzzReport e2e = harness::fuzz_bucketing(o);
  v.detail << " e2e " << e2e.trials << " trials " << e2e.divergences << " divergences " << e2e.seconds << " s";
  v.require(e2e.trials == kE2eTrials && e2e.divergences == 0, "end-to-end divergence");
  v.require(e2e.seconds < kE2eBudgetS, "end-to-end over budget");
  if (e2e.first_divergence) v.detail << "\n" << *e2e.first_divergence;
}

// ------------------------------------------------------------------ 2

void criterion2(Verdict& v) {
  // Bare engine with a stand-in tag.
  bucketing::BucketMap m;
  std::vector<bucketing::OracleFiling> filed;
  auto tag = [](uint32_t bucket) {
    auto d = sha256(ByteWriter().u32(bucket).view());
    return Bytes(d.begin(), d.end());
  };
  auto file = [&](uint8_t id, uint32_t t) {
    bucketing::file_allegation(m, Bytes{id}, t, tag(t - 1));
    bucketing::saturate(m, [&](const bucketing::Task& task) { return tag(task.i); });
    filed.push_back({Bytes{id}, "x", t});
  };
  file(1, 2);
  file(2, 3);
  file(3, 5);
  v.require(bucketing::revealed_set(m).empty(), "engine revealed part of {2,3,5}");
  file(4, 3);
  v.require(bucketing::revealed_set(m) == std::set<bucketing::AllegationId>{Bytes{1}, Bytes{2}, Bytes{4}},
            "engine did not reveal exactly {2,3,3}");
  v.require(bucketing::revealed_set(m) == bucketing::oracle_reveal_predicate(filed), "engine disagrees with oracle");

  // Real escrows.
  ClusterOptions co;
  co.cfg = ProtocolConfig::for_escrows(3, 1);
  co.seed = 2;
  Cluster c(co);
  c.initialize();
  const std::vector<std::pair<std::string, uint32_t>> plan{{"t2", 2}, {"t3", 3}, {"t5", 5}, {"t3b", 3}};
  for (const auto& [label, t] : plan) v.require(c.register_user("user-" + label, 1).ok, "registration failed");
  for (size_t k = 0; k < 3; ++k) {
    v.require(c.file(plan[k].first, "user-" + plan[k].first, std::nullopt, meta("m"), text(plan[k].first), plan[k].second).ok,
              "filing rejected");
  }
  for (uint32_t j : c.honest()) v.require(c.revealed_labels(j).empty(), "escrow revealed part of {2,3,5}");
  v.require(c.file("t3b", "user-t3b", std::nullopt, meta("m"), text("t3b"), 3).ok, "filing rejected");
  const std::set<std::string> want{"t2", "t3", "t3b"};
  for (uint32_t j : c.honest()) {
    auto got = c.revealed_labels(j);
    v.require(got == want, "escrow " + std::to_string(j) + " revealed " + labels(got));
  }
  v.detail << "revealed " << labels(c.revealed_labels(1)) << " after {2,3,5}+{3}";
  record("thresholds", c);
}

// ------------------------------------------------------------------ 3

void criterion3(Verdict& v) {
  const auto& pc = PairingContext::get();
  const auto ck = pc.commit_key();
  const Field& f = *ck.field;
  transport::SimNetwork net;
  Rng rng = Rng::from_u64(3);
  size_t equal = 0, accepted = 0, rejected = 0, total = 0;
  for (uint32_t n : {3u, 5u, 7u}) {
    ProtocolConfig cfg = ProtocolConfig::for_escrows(n, 10);
    for (size_t i = 0; i < kDvrfSamples; ++i) {
      Scalar sk = f.random(rng), x = f.random(rng);
      dvrf::VrfOutput expect = dvrf::reference_vrf(sk, x);
      auto sks = testing::trusted_sharing(ck, cfg, sk, rng);
      auto xs = testing::trusted_sharing(ck, cfg, x, rng);
      auto out = testing::run_mpc<G1, dvrf::VrfOutput>(
          net, ck, cfg, "vrf/" + std::to_string(n) + "/" + std::to_string(i), rng.next_u64(), {},
          [&](vss::MpcContext<G1>& ctx) {
            return *dvrf::dvrf(ctx, sks[ctx.index() - 1], xs[ctx.index() - 1], true, vss::Recipient::escrows());
          });
      ++total;
      bool all_equal = true;
      for (const auto& r : out.results) all_equal = all_equal && r.ok() && *r.value == expect;
      equal += all_equal ? 1 : 0;
      if (!out.results[0].ok() || !out.results[0].value->proof) continue;
      const G1& proof = *out.results[0].value->proof;
      const G2 pk = pc.g2.pow(sk);
      accepted += dvrf::verify_vrf(pk, proof, x) ? 1 : 0;
      Bytes mutated = proof.to_bytes();
      size_t bit = rng.uniform(mutated.size() * 8);
      mutated[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
      bool ok = false;
      try {
        ok = dvrf::verify_vrf(pk, G1::from_bytes(mutated), x);
      } catch (const Error&) {
        ok = false;  // not a group element
      }
      rejected += ok ? 0 : 1;
    }
  }
  v.detail << equal << "/" << total << " equal to the reference, " << accepted << " honest proofs accepted, "
           << rejected << " mutated proofs rejected";
  v.require(equal == total, "output or proof mismatch");
  v.require(accepted == total, "honest proof rejected");
  v.require(rejected == total, "mutated proof accepted");
}

// ------------------------------------------------------------------ 4

std::vector<std::vector<uint32_t>> subsets(uint32_t n, uint32_t k) {
  std::vector<std::vector<uint32_t>> out;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<uint32_t>(__builtin_popcount(mask)) != k) continue;
    std::vector<uint32_t> s;
    for (uint32_t j = 0; j < n; ++j) {
      if (mask & (1u << j)) s.push_back(j + 1);
    }
    out.push_back(s);
  }
  return out;
}

// Lagrange coefficients of the degree-|xs|-1 polynomial through (xs, ys).
std::vector<Scalar> interpolate(const Field& f, const std::vector<Scalar>& xs, const std::vector<Scalar>& ys) {
  std::vector<Scalar> out(xs.size(), f.zero());
  for (size_t i = 0; i < xs.size(); ++i) {
    std::vector<Scalar> basis{f.one()};
    Scalar den = f.one();
    for (size_t m = 0; m < xs.size(); ++m) {
      if (m == i) continue;
      std::vector<Scalar> next(basis.size() + 1, f.zero());
      for (size_t k = 0; k < basis.size(); ++k) {
        next[k + 1] += basis[k];
        next[k] -= basis[k] * xs[m];
      }
      basis = next;
      den *= xs[i] - xs[m];
    }
    Scalar scale = ys[i] * den.inverse();
    for (size_t k = 0; k < out.size(); ++k) out[k] += basis[k] * scale;
  }
  return out;
}

void criterion4(Verdict& v) {
  const Field& toy = Field::toy(23);
  auto tck = toy_commit_key(toy);
  ProtocolConfig tcfg{3, 1, 10, 128, true};
  transport::SimNetwork net;
  Rng rng = Rng::from_u64(4);
  size_t products = 0;
  for (size_t i = 0; i < kToyPairs; ++i) {
    uint64_t x = rng.uniform(23), y = rng.uniform(23);
    auto xs = testing::trusted_sharing(tck, tcfg, toy.from_u64(x), rng);
    auto ys = testing::trusted_sharing(tck, tcfg, toy.from_u64(y), rng);
    auto out = testing::run_mpc<ToyElem, Scalar>(net, tck, tcfg, "mul/" + std::to_string(i), i, {},
                                                 [&](vss::MpcContext<ToyElem>& ctx) {
                                                   auto z = vss::multiply(ctx, xs[ctx.index() - 1], ys[ctx.index() - 1]);
                                                   return vss::open(ctx, z);
                                                 });
    bool ok = true;
    for (const auto& r : out.results) ok = ok && r.ok() && *r.value == toy.from_u64(x * y % 23);
    products += ok ? 1 : 0;
  }
  v.require(products == kToyPairs, "multiply mismatch");

  // Any f shares fit every candidate secret: build the witness polynomial and
  // check it reproduces the seen shares and the Pedersen commitments.
  Scalar w = toy.zero();
  for (uint64_t e = 0; e < 23; ++e) {
    if (tck.g.pow(toy.from_u64(e)) == tck.h) w = toy.from_u64(e);
  }
  ProtocolConfig wcfg{5, 2, 10, 128, true};
  size_t witnesses = 0;
  for (size_t trial = 0; trial < kWitnesses; ++trial) {
    std::vector<Scalar> a, b;
    for (uint32_t k = 0; k <= wcfg.f; ++k) {
      a.push_back(toy.random(rng));
      b.push_back(toy.random(rng));
    }
    auto d = vss::deal_vss_with(tck, a, b, wcfg.n);
    auto pick = subsets(wcfg.n, wcfg.f)[trial % subsets(wcfg.n, wcfg.f).size()];
    Scalar alt = toy.random(rng);
    std::vector<Scalar> px{toy.zero()}, py{alt};
    for (uint32_t j : pick) {
      px.push_back(toy.from_u64(j));
      py.push_back(d.shares[j - 1].value);
    }
    auto a2 = interpolate(toy, px, py);
    std::vector<Scalar> b2;
    for (uint32_t k = 0; k <= wcfg.f; ++k) b2.push_back(b[k] + (a[k] - a2[k]) * w.inverse());
    auto alt_d = vss::deal_vss_with(tck, a2, b2, wcfg.n);
    bool ok = !w.is_zero() && a2[0] == alt && alt_d.commitments == d.commitments;
    for (uint32_t j : pick) ok = ok && alt_d.shares[j - 1] == d.shares[j - 1];
    witnesses += ok ? 1 : 0;
  }
  v.require(witnesses == kWitnesses, "missing secrecy witness");

  const auto ck = PairingContext::get().commit_key();
  size_t subsets_ok = 0, subsets_total = 0;
  for (uint32_t n : {3u, 5u, 7u}) {
    ProtocolConfig cfg = ProtocolConfig::for_escrows(n, 10);
    Scalar secret = ck.field->random(rng);
    auto d = vss::deal_vss(ck, secret, cfg, vss::CommitMode::kPedersen, rng);
    for (const auto& s : subsets(n, cfg.f + 1)) {
      std::vector<vss::Share> shares;
      for (uint32_t j : s) shares.push_back(d.shares[j - 1]);
      ++subsets_total;
      subsets_ok += vss::combine_shares(ck, d.commitments, shares, cfg.f) == secret ? 1 : 0;
    }
  }
  v.require(subsets_ok == subsets_total, "subset disagreement");
  v.detail << products << "/" << kToyPairs << " products, " << witnesses << "/" << kWitnesses << " witnesses, "
           << subsets_ok << "/" << subsets_total << " subsets agree";
}

// ------------------------------------------------------------------ 5

void criterion5(Verdict& v) {
  constexpr uint32_t kCulprit = 3;
  for (vss::Behavior b : {vss::Behavior::kWrongMultiplyShare, vss::Behavior::kSilentDrop, vss::Behavior::kBadDealing,
                          vss::Behavior::kBadExponentContribution}) {
    ClusterOptions co;
    co.cfg = ProtocolConfig::for_escrows(5, 2);
    co.seed = 50 + static_cast<uint64_t>(b);
    co.behaviors[kCulprit] = b;
    Cluster c(co);
    c.initialize();
    c.register_user("alice", 1);
    c.register_user("bob", 1);
    c.file("a", "alice", std::nullopt, meta("x"), text("a"), 2);
    c.file("b", "bob", std::nullopt, meta("x"), text("b"), 2);
    auto named = c.named_culprits();
    std::set<std::string> names;
    for (uint32_t j : named) names.insert(std::to_string(j));
    v.detail << behavior_name(b) << " -> " << labels(names) << "; ";
    v.require(named == std::set<uint32_t>{kCulprit}, std::string(behavior_name(b)) + " named the wrong parties");
    for (const auto& [j, err] : c.escrow_errors()) v.require(j == kCulprit, "honest escrow failed: " + err);
    record(std::string("corrupt-") + std::string(behavior_name(b)), c);
  }
  size_t reports = 0;
  for (size_t run = 0; run < kHonestRuns; ++run) {
    ClusterOptions co;
    co.cfg = ProtocolConfig::for_escrows(5, 1);
    co.seed = 1000 + run;
    Cluster c(co);
    c.initialize();
    bool ok = c.register_user("u", 1).ok && c.file("a", "u", std::nullopt, meta("x"), text("a"), 1).ok;
    v.require(ok, "honest run " + std::to_string(run) + " failed");
    for (uint32_t j : c.honest()) v.require(c.revealed_labels(j) == std::set<std::string>{"a"}, "honest run did not reveal");
    reports += c.honest_reports().size();
    record("honest-" + std::to_string(run), c);
  }
  v.detail << kHonestRuns << " honest runs, " << reports << " reports";
  v.require(reports == 0, "honest runs produced reports");
}

// ------------------------------------------------------------------ 6

void criterion6(Verdict& v) {
  constexpr uint32_t kUsers = 4, kKeys = 2;
  ClusterOptions co;
  co.cfg = ProtocolConfig::for_escrows(3, kKeys);
  co.seed = 6;
  Cluster c(co);
  c.initialize();
  for (uint32_t u = 0; u < kUsers; ++u) v.require(c.register_user("u" + std::to_string(u), kKeys).ok, "registration");
  // Three filings against one person meet their thresholds; three do not.
  struct Plan {
    const char* label;
    const char* who;
    const char* accused;
    uint32_t t;
  };
  const Plan plan[] = {{"r1", "u0", "target", 3}, {"x1", "u1", "other1", 2}, {"r2", "u2", "target", 2},
                       {"x2", "u3", "other2", 4}, {"x3", "u0", "target2", 2}, {"r3", "u1", "target", 3}};
  for (const auto& p : plan) v.require(c.file(p.label, p.who, std::nullopt, meta(p.accused), text(p.label), p.t).ok, "filing");
  const auto& m = c.escrow(1).metrics();
  const uint64_t filings = std::size(plan);
  const uint64_t revealed = c.escrow(1).reveals().size();
  v.detail << "registration " << m.dvrf.registration << " matching " << m.dvrf.matching << " reveal " << m.dvrf.reveal
           << " for " << filings << " filings, " << revealed << " revealed; per user";
  v.require(revealed == 3, "expected 3 reveals");
  v.require(m.dvrf.registration == 2ull * kUsers * kKeys, "registration DVRFs != 2ul");
  v.require(m.dvrf.matching <= 2 * filings, "matching DVRFs above 2 per allegation");
  v.require(m.dvrf.reveal == revealed, "reveal DVRFs != revealed allegations");
  for (uint32_t j : c.honest()) {
    v.require(c.escrow(j).metrics().dvrf.total() == m.dvrf.total(), "escrows disagree on the DVRF count");
  }
  for (uint32_t u = 0; u < kUsers; ++u) {
    double d = c.dvrf_for_user("u" + std::to_string(u));
    v.detail << " " << d;
    v.require(d <= 5.0 * kKeys + 1e-9, "user above 5l DVRFs");
  }
  // The per-user attribution sums back to the global counter.
  double sum = 0;
  for (uint32_t u = 0; u < kUsers; ++u) sum += c.dvrf_for_user("u" + std::to_string(u));
  v.require(std::abs(sum - static_cast<double>(m.dvrf.total())) < 1e-6, "attribution does not sum to the total");
  record("budget", c);
}

// ------------------------------------------------------------------ 7

void criterion7(Verdict& v) {
  size_t reveals_checked = 0, mismatches = 0, premature = 0, rejected = 0;
  Rng master = Rng::from_u64(7);
  for (size_t s = 0; s < kIntegrityScenarios; ++s) {
    harness::FuzzOptions fo;
    fo.max_allegations = 8;
    fo.max_classes = 3;
    fo.max_threshold = 4;
    Rng rng = Rng::from_u64(master.next_u64());
    auto filings = harness::random_filings(fo, rng);
    ClusterOptions co;
    co.cfg = ProtocolConfig::for_escrows(3, 2);
    co.seed = rng.next_u64();
    Cluster c(co);
    c.initialize();
    std::vector<bucketing::OracleFiling> oracle_in;
    for (size_t k = 0; k < filings.size(); ++k) {
      std::string who = "user" + std::to_string(k / 2);
      if (k % 2 == 0) v.require(c.register_user(who, 2).ok, "registration");
      std::string body = "allegation " + std::to_string(k) + " " + to_hex(rng.bytes(8));
      std::string accused = "person" + std::to_string(filings[k].meta_class);
      StepResult r = c.file("a" + std::to_string(k), who, std::nullopt, meta(accused), text(body), filings[k].t);
      v.require(r.ok, "filing rejected");
      oracle_in.push_back({c.filed().back().id, accused, filings[k].t});
      auto allowed = bucketing::oracle_reveal_predicate(oracle_in);
      for (uint32_t j : c.honest()) {
        for (const auto& rev : c.escrow(j).reveals()) premature += allowed.count(rev.id) ? 0 : 1;
      }
    }
    for (uint32_t j : c.honest()) {
      for (const auto& rev : c.escrow(j).reveals()) {
        const harness::FiledAllegation* f = c.find_filed(rev.id);
        ++reveals_checked;
        bool same = f && rev.decrypt_ok && rev.t == f->t && rev.text == f->text && rev.identity == f->identity;
        mismatches += same ? 0 : 1;
      }
    }
    // A one-time key that was never registered: every honest escrow drops
    // the filing on its public checks and starts no MPC.
    v.require(c.register_user("probe", 1).ok, "probe registration");
    escrow::FilingPackage pkg = c.client("probe").prepare_filing(0, meta("x"), text("x"), 2);
    crypto::KeyPair rogue = crypto::KeyPair::generate(rng);
    pkg.pk = rogue.pk;
    pkg.mac_proof = G1::generator().pow(Field::bls12_381().random(rng));
    pkg.signature = crypto::sign(rogue, pkg.signed_body(), rng);
    std::map<uint32_t, uint64_t> sessions;
    for (uint32_t j : c.honest()) sessions[j] = c.escrow(j).metrics().mpc_sessions;
    StepResult u = c.post_anonymous(escrow::board_payload(escrow::EntryKind::kFiling, pkg.encode()));
    v.require(!u.ok && u.code == Errc::kUnknownMac, "unregistered key not rejected");
    for (uint32_t j : c.honest()) {
      v.require(c.escrow(j).metrics().mpc_sessions == sessions[j], "unregistered key started an MPC");
      bool logged = false;
      for (const auto& r : c.escrow(j).rejections()) logged = logged || r.code == Errc::kUnknownMac;
      v.require(logged, "escrow " + std::to_string(j) + " did not log the rejection");
    }
    ++rejected;
    record("integrity-" + std::to_string(s), c);
  }
  v.detail << kIntegrityScenarios << " scenarios, " << reveals_checked << " reveals checked, " << mismatches
           << " mismatches, " << premature << " premature, " << rejected << " unregistered keys rejected";
  v.require(mismatches == 0, "revealed fields differ from the filing");
  v.require(premature == 0, "allegation revealed below its threshold");
  v.require(rejected == kIntegrityScenarios, "missing unregistered-key check");
}

// ------------------------------------------------------------------ 8

harness::PerfPoint tcp_point(uint32_t n, int64_t delay_ms) {
  harness::PerfOptions o;
  o.tcp = true;
  o.delay = std::chrono::milliseconds(delay_ms);
  o.users = 3;
  o.keys = 1;
  o.filings = 0;
  o.seed = 8;
  return harness::run_perf_point(o, n);
}

void criterion8(Verdict& v) {
  double prev_reg = 0;
  for (uint32_t n : {3u, 5u, 7u}) {
    harness::PerfPoint p = tcp_point(n, 0);
    v.detail << "n=" << n << " register_ms=" << p.register_ms << " e2e_ms=" << p.e2e_ms << " wall_s="
             << p.metrics.wall_s << "; ";
    v.require(p.e2e_ms >= 0, "probe pair not revealed at n=" + std::to_string(n));
    v.require(p.metrics.wall_s < kTcpBudgetS, "over budget at n=" + std::to_string(n));
    v.require(p.register_ms >= prev_reg, "registration latency decreased at n=" + std::to_string(n));
    v.require(p.converged, "diverged at n=" + std::to_string(n));
    g_convergence.emplace_back("tcp-n" + std::to_string(n), p.converged);
    prev_reg = p.register_ms;
  }
  double prev_e2e = -1;
  for (int64_t d : kDelaysMs) {
    harness::PerfPoint p = tcp_point(3, d);
    v.detail << "delay=" << d << " e2e_ms=" << p.e2e_ms << "; ";
    v.require(p.e2e_ms > prev_e2e, "latency not increasing at delay " + std::to_string(d));
    v.require(p.converged, "diverged at delay " + std::to_string(d));
    g_convergence.emplace_back("tcp-delay" + std::to_string(d), p.converged);
    prev_e2e = p.e2e_ms;
  }
}

// ------------------------------------------------------------------ 9

void criterion9(Verdict& v) {
  if (g_convergence.empty()) {
    // Run alone: rebuild the scenario-driven clusters.
    Verdict scratch;
    criterion2(scratch);
    criterion6(scratch);
    for (const char* name : {"thresholds.sae", "corrupt_multiply.sae", "rejections.sae"}) {
      std::unique_ptr<Cluster> keep;
      auto rep = harness::run_scenario(harness::load_scenario(std::string(SAE_SCENARIO_DIR) + "/" + name), &keep);
      g_convergence.emplace_back(name, rep.converged && keep && keep->converged());
    }
  }
  size_t diverged = 0;
  for (const auto& [name, ok] : g_convergence) {
    if (!ok) {
      ++diverged;
      v.detail << name << " diverged; ";
    }
  }
  v.detail << g_convergence.size() - diverged << "/" << g_convergence.size() << " clusters byte-identical";
  v.require(diverged == 0, "canonical state differs across honest escrows");
}

struct Criterion {
  int number;
  const char* name;
  std::function<void(Verdict&)> run;
};

}  // namespace
}  // namespace sae

int main(int argc, char** argv) {
  using namespace sae;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: sae_acceptance [--only N]\n";
      return 2;
    }
  }
  const std::vector<Criterion> all{
      {1, "bucketing-fuzz", criterion1},     {2, "threshold-example", criterion2}, {3, "dvrf-reference", criterion3},
      {4, "mpc-toolbox", criterion4},        {5, "identifiable-abort", criterion5}, {6, "dvrf-budget", criterion6},
      {7, "integrity", criterion7},          {8, "tcp-latency", criterion8},        {9, "convergence", criterion9},
  };
  bool all_pass = true;
  for (const auto& c : all) {
    if (only != 0 && c.number != only) continue;
    Verdict v;
    auto start = Clock::now();
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    std::cout << "criterion " << c.number << " " << (v.pass ? "PASS" : "FAIL") << " " << c.name << ": "
              << v.detail.str() << " (" << seconds_since(start) << " s)" << std::endl;
    all_pass = all_pass && v.pass;
  }
  return all_pass ? 0 : 1;
}
