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

#include "sae/harness/fuzz.hpp"

#include <cmath>
#include <sstream>

#include "sae/algebra/hash.hpp"
#include "sae/bucketing/bucketing.hpp"
#include "sae/errors.hpp"

namespace sae::harness {

namespace {

using bucketing::AllegationId;
using bucketing::BucketMap;
using bucketing::OracleFiling;

constexpr uint32_t kKeysPerUser = 4;

std::string label(size_t k) { return "a" + std::to_string(k); }
std::string user(size_t k) { return "u" + std::to_string(k / kKeysPerUser); }
std::string meta_name(uint32_t c) { return "class" + std::to_string(c); }

AllegationId engine_id(size_t k) {
  ByteWriter w;
  w.u32(static_cast<uint32_t>(k));
  return w.take();
}

// Bucket-keyed stand-in for the distributed PRF.
bucketing::MatchTag engine_tag(uint32_t bucket, uint32_t meta_class) {
  ByteWriter w;
  w.u32(bucket).u32(meta_class);
  auto d = sha256(w.view());
  return Bytes(d.begin(), d.end());
}

std::set<std::string> labels_of(const std::set<AllegationId>& ids, const std::map<AllegationId, std::string>& names) {
  std::set<std::string> out;
  for (const auto& id : ids) out.insert(names.at(id));
  return out;
}

std::set<std::string> oracle_labels(const std::vector<FuzzFiling>& f, size_t upto) {
  std::vector<OracleFiling> of;
  std::map<AllegationId, std::string> names;
  for (size_t k = 0; k < upto; ++k) {
    of.push_back({engine_id(k), meta_name(f[k].meta_class), f[k].t});
    names[engine_id(k)] = label(k);
  }
  return labels_of(bucketing::oracle_reveal_predicate(of), names);
}

// Every collection is wholly revealed or wholly hidden, and revealed ids
// never leave the revealed set.
std::optional<std::string> check_engine_state(const BucketMap& m, const std::set<AllegationId>& prev) {
  bucketing::check_invariants(m);
  auto now = bucketing::revealed_set(m);
  for (const auto& id : prev) {
    if (!now.count(id)) return "a revealed allegation was hidden again";
  }
  for (const auto& c : bucketing::collections(m)) {
    for (const auto& id : c.members) {
      if (now.count(id) != (c.revealed ? 1u : 0u)) return "a coalesced pair is split across the revealed set";
    }
  }
  return std::nullopt;
}

struct TrialResult {
  std::optional<std::string> divergence;
  uint64_t dvrfs = 0;
};

TrialResult engine_trial(const std::vector<FuzzFiling>& f) {
  TrialResult out;
  BucketMap m;
  std::vector<OracleFiling> filed;
  std::map<AllegationId, uint32_t> meta;
  std::set<AllegationId> prev;
  for (size_t k = 0; k < f.size(); ++k) {
    AllegationId id = engine_id(k);
    meta[id] = f[k].meta_class;
    filed.push_back({id, meta_name(f[k].meta_class), f[k].t});
    bucketing::file_allegation(m, id, f[k].t, engine_tag(f[k].t - 1, f[k].meta_class));
    out.dvrfs += 1 + bucketing::saturate(m, [&](const bucketing::Task& task) {
                   return engine_tag(task.i, meta.at(task.id));
                 });
    if (auto bad = check_engine_state(m, prev)) {
      out.divergence = "after filing " + std::to_string(k) + ": " + *bad;
      return out;
    }
    prev = bucketing::revealed_set(m);
    if (prev != bucketing::oracle_reveal_predicate(filed)) {
      out.divergence = "after filing " + std::to_string(k) + ": revealed set differs from the oracle";
      return out;
    }
  }
  return out;
}

TrialResult e2e_trial(const FuzzOptions& o, uint64_t trial_seed, const std::vector<FuzzFiling>& f) {
  TrialResult out;
  ClusterOptions co;
  co.cfg = ProtocolConfig::for_escrows(o.escrows, kKeysPerUser);
  co.seed = trial_seed;
  Cluster c(co);
  c.initialize();
  std::map<std::string, uint32_t> keys;
  for (size_t k = 0; k < f.size(); ++k) ++keys[user(k)];
  for (const auto& [u, count] : keys) {
    StepResult r = c.register_user(u, count);
    if (!r.ok) {
      out.divergence = "registration of " + u + " failed: " + r.message;
      return out;
    }
  }
  for (size_t k = 0; k < f.size(); ++k) {
    client::Meta meta{{"accused", meta_name(f[k].meta_class)}, {"category", "other"}};
    std::string text = "allegation " + std::to_string(k);
    StepResult r = c.file(label(k), user(k), std::nullopt, meta, ByteView(reinterpret_cast<const uint8_t*>(text.data()), text.size()), f[k].t);
    if (!r.ok) {
      out.divergence = "filing " + std::to_string(k) + " rejected: " + r.message;
      return out;
    }
    auto want = oracle_labels(f, k + 1);
    for (uint32_t j : c.honest()) {
      if (c.revealed_labels(j) != want) {
        out.divergence = "after filing " + std::to_string(k) + ": escrow " + std::to_string(j) +
                         " revealed set differs from the oracle";
        return out;
      }
    }
  }
  if (!c.converged()) out.divergence = "honest escrows diverged";
  if (!c.honest_reports().empty()) out.divergence = "honest run produced an abort report";
  out.dvrfs = c.escrow(1).metrics().dvrf.total();
  return out;
}

}  // namespace

std::vector<FuzzFiling> random_filings(const FuzzOptions& o, Rng& rng) {
  size_t count = 1 + rng.uniform(o.max_allegations);
  uint32_t classes = 1 + static_cast<uint32_t>(rng.uniform(o.max_classes));
  std::vector<FuzzFiling> out;
  for (size_t k = 0; k < count; ++k) {
    FuzzFiling f;
    f.meta_class = static_cast<uint32_t>(rng.uniform(classes));
    f.t = o.force_threshold ? *o.force_threshold : 1 + static_cast<uint32_t>(rng.uniform(o.max_threshold));
    out.push_back(f);
  }
  return out;
}

std::string fuzz_scenario_text(const FuzzOptions& o, uint64_t trial_seed, const std::vector<FuzzFiling>& f) {
  std::ostringstream s;
  s << "sae-scenario v1\n"
    << "config escrows=" << o.escrows << " keys=" << kKeysPerUser << " seed=" << trial_seed << "\n";
  std::map<std::string, uint32_t> keys;
  for (size_t k = 0; k < f.size(); ++k) ++keys[user(k)];
  for (const auto& [u, count] : keys) s << "register " << u << " " << count << "\n";
  for (size_t k = 0; k < f.size(); ++k) {
    s << "file " << label(k) << " " << user(k) << " next " << f[k].t << " accused=" << meta_name(f[k].meta_class)
      << " category=other text=\"allegation " << k << "\"\n";
    s << "expect_reveal";
    for (const auto& l : oracle_labels(f, k + 1)) s << " " << l;
    s << "\n";
  }
  s << "expect_converged\n";
  return s.str();
}

std::string FuzzReport::text() const {
  std::ostringstream o;
  o << "fuzz trials=" << trials << " filings=" << filings << " divergences=" << divergences << " dvrfs=" << dvrfs
    << " seconds=" << seconds << "\n";
  if (first_divergence) o << "first divergence:\n" << *first_divergence;
  return o.str();
}

FuzzReport fuzz_bucketing(const FuzzOptions& o) {
  if (o.trials == 0) throw Error(Errc::kInvalidConfig, "trials must be at least 1");
  if (o.max_allegations == 0 || o.max_classes == 0 || o.max_threshold == 0) {
    throw Error(Errc::kInvalidConfig, "fuzz bounds must be positive");
  }
  FuzzReport rep;
  auto start = std::chrono::steady_clock::now();
  Rng master = Rng::from_u64(o.seed);
  for (size_t trial = 0; trial < o.trials; ++trial) {
    uint64_t trial_seed = master.next_u64();
    Rng rng = Rng::from_u64(trial_seed);
    auto filings = random_filings(o, rng);
    TrialResult r;
    try {
      r = o.end_to_end ? e2e_trial(o, trial_seed, filings) : engine_trial(filings);
    } catch (const std::exception& e) {
      r.divergence = e.what();
    }
    ++rep.trials;
    rep.filings += filings.size();
    rep.dvrfs += r.dvrfs;
    if (r.divergence) {
      ++rep.divergences;
      if (!rep.first_divergence) {
        rep.first_divergence = "# trial " + std::to_string(trial) + ": " + *r.divergence + "\n" +
                               fuzz_scenario_text(o, trial_seed, filings);
      }
    }
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

uint32_t workload_threshold(Rng& rng) {
  constexpr double kMean = 5.0;
  for (;;) {
    // 53 uniform bits in (0, 1].
    double u = (static_cast<double>(rng.next_u64() >> 11) + 1.0) / 9007199254740992.0;
    auto t = static_cast<uint32_t>(std::lround(-kMean * std::log(u)));
    if (t >= 2 && t <= 20) return t;
  }
}

size_t emit_decoys(Cluster& c, const std::vector<std::string>& pool, size_t count, Rng& rng) {
  static const char kAlphabet[] = "abcdefghijklmnopqrstuvwxyz ";
  const auto categories = client::default_categories();
  size_t filed = 0;
  for (size_t k = 0; k < count; ++k) {
    std::vector<std::string> ready;
    for (const auto& id : pool) {
      if (c.has_client(id) && c.client(id).next_unused() < c.client(id).keys().size()) ready.push_back(id);
    }
    if (ready.empty()) break;
    const std::string& who = ready[rng.uniform(ready.size())];
    Bytes accused = rng.bytes(32);
    client::Meta meta = client::make_meta(to_hex(accused), categories[rng.uniform(categories.size())], categories);
    Bytes text(16 + rng.uniform(497));
    for (auto& ch : text) ch = static_cast<uint8_t>(kAlphabet[rng.uniform(sizeof(kAlphabet) - 1)]);
    std::string name = "decoy" + std::to_string(c.filed().size());
    c.file(name, who, std::nullopt, meta, text, workload_threshold(rng));
    ++filed;
  }
  return filed;
}

}  // namespace sae::harness
