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

#include "sae/harness/scenario.hpp"

#include <fstream>
#include <sstream>

#include "sae/errors.hpp"
#include "sae/harness/fuzz.hpp"

namespace sae::harness {

namespace {

Error parse_error(size_t line, const std::string& what) {
  return Error(Errc::kDecode, "scenario line " + std::to_string(line) + ": " + what);
}

uint64_t parse_uint(size_t line, const std::string& v) {
  try {
    size_t used = 0;
    uint64_t out = std::stoull(v, &used);
    if (used != v.size() || v.empty() || v[0] == '-') throw std::invalid_argument(v);
    return out;
  } catch (const std::exception&) {
    throw parse_error(line, "expected an unsigned integer, got '" + v + "'");
  }
}

std::pair<std::string, std::string> split_kv(size_t line, const std::string& tok) {
  auto eq = tok.find('=');
  if (eq == std::string::npos || eq == 0) throw parse_error(line, "expected key=value, got '" + tok + "'");
  return {tok.substr(0, eq), tok.substr(eq + 1)};
}

size_t min_args(const std::string& op) {
  if (op == "register") return 2;
  if (op == "file") return 4;
  if (op == "decoys") return 2;
  if (op == "expect_abort") return 1;
  if (op == "expect_reject") return 2;
  if (op == "expect_reveal" || op == "expect_converged") return 0;
  return SIZE_MAX;
}

std::string joined(const std::set<std::string>& s) {
  std::string out = "{";
  for (const auto& x : s) out += (out.size() > 1 ? "," : "") + x;
  return out + "}";
}

}  // namespace

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false, any = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '\\' && i + 1 < line.size()) {
        cur += line[++i];
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = any = true;
    } else if (c == '#') {
      break;
    } else if (c == ' ' || c == '\t' || c == '\r') {
      if (any) out.push_back(std::move(cur));
      cur.clear();
      any = false;
    } else {
      cur += c;
      any = true;
    }
  }
  if (quoted) throw Error(Errc::kDecode, "unterminated quote");
  if (any) out.push_back(std::move(cur));
  return out;
}

Scenario parse_scenario(const std::string& text) {
  Scenario s;
  std::istringstream in(text);
  std::string raw;
  size_t line = 0;
  bool header = false, started = false;
  while (std::getline(in, raw)) {
    ++line;
    std::vector<std::string> tok;
    try {
      tok = tokenize(raw);
    } catch (const Error& e) {
      throw parse_error(line, e.what());
    }
    if (tok.empty()) continue;
    if (!header) {
      if (tok.size() != 2 || tok[0] + " " + tok[1] != kScenarioHeader) {
        throw parse_error(line, "expected '" + std::string(kScenarioHeader) + "'");
      }
      header = true;
      continue;
    }
    const std::string& op = tok[0];
    std::vector<std::string> args(tok.begin() + 1, tok.end());
    if (op == "config") {
      if (started) throw parse_error(line, "config after the first step");
      uint32_t n = s.options.cfg.n, l = s.options.cfg.l;
      for (const auto& a : args) {
        auto [k, v] = split_kv(line, a);
        if (k == "escrows") {
          n = static_cast<uint32_t>(parse_uint(line, v));
        } else if (k == "keys") {
          l = static_cast<uint32_t>(parse_uint(line, v));
        } else if (k == "seed") {
          s.options.seed = parse_uint(line, v);
        } else if (k == "quota_period_ms") {
          s.options.quota_period_ms = static_cast<int64_t>(parse_uint(line, v));
        } else if (k == "step_timeout_ms") {
          s.options.step_timeout = std::chrono::milliseconds(parse_uint(line, v));
        } else {
          throw parse_error(line, "unknown config key '" + k + "'");
        }
      }
      if (n % 2 == 0 || n < 3) throw parse_error(line, "escrows must be odd and at least 3");
      s.options.cfg = ProtocolConfig::for_escrows(n, l);
      continue;
    }
    if (op == "corrupt") {
      if (started) throw parse_error(line, "corrupt after the first step");
      if (args.size() != 2) throw parse_error(line, "corrupt <escrow> <behavior>");
      uint32_t j = static_cast<uint32_t>(parse_uint(line, args[0]));
      try {
        s.corruptions.emplace_back(j, vss::parse_behavior(args[1]));
      } catch (const Error& e) {
        throw parse_error(line, e.what());
      }
      continue;
    }
    if (min_args(op) == SIZE_MAX) throw parse_error(line, "unknown step '" + op + "'");
    if (args.size() < min_args(op)) throw parse_error(line, "too few arguments to '" + op + "'");
    if (op == "register") parse_uint(line, args[1]);
    if (op == "file") {
      if (args[2] != "next") parse_uint(line, args[2]);
      parse_uint(line, args[3]);
      for (size_t i = 4; i < args.size(); ++i) split_kv(line, args[i]);
    }
    if (op == "decoys") parse_uint(line, args[0]);
    if (op == "expect_abort") parse_uint(line, args[0]);
    if (op == "expect_reject" && !parse_errc(args[1])) throw parse_error(line, "unknown error code '" + args[1] + "'");
    started = true;
    s.steps.push_back({line, op, std::move(args)});
  }
  for (const auto& [j, b] : s.corruptions) {
    if (j < 1 || j > s.options.cfg.n) throw parse_error(0, "corrupt index out of range");
    s.options.behaviors[j] = b;
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kIo, "cannot read scenario " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string ScenarioReport::text() const {
  std::ostringstream o;
  o << "scenario " << (passed ? "PASS" : "FAIL") << " steps=" << steps.size()
    << " converged=" << (converged ? "yes" : "no") << "\n";
  for (const auto& st : steps) {
    o << "  step " << st.index << " line " << st.line << " " << st.op << " " << (st.ok ? "ok" : "FAIL");
    if (!st.message.empty()) o << " " << st.message;
    o << " (" << st.ms << " ms)\n";
  }
  if (!steps.empty()) o << metrics.text();
  return o.str();
}

ScenarioReport run_scenario(const Scenario& s, std::unique_ptr<Cluster>* keep,
                            std::unique_ptr<TransportFactory> transport) {
  ScenarioReport rep;
  if (s.steps.empty()) return rep;
  auto wall = std::chrono::steady_clock::now();
  auto cluster = std::make_unique<Cluster>(s.options, std::move(transport));
  cluster->initialize();
  Rng decoy_rng = Rng::from_u64(s.options.seed).fork("decoys");
  std::map<std::string, std::optional<Errc>> outcome;
  std::vector<double> register_ms, file_ms;

  for (size_t i = 0; i < s.steps.size(); ++i) {
    const ScenarioStep& st = s.steps[i];
    StepReport r{i, st.line, st.op, true, {}, 0};
    auto start = std::chrono::steady_clock::now();
    auto fail = [&](const std::string& m) {
      r.ok = false;
      r.message = m;
    };
    try {
      if (st.op == "register") {
        StepResult res = cluster->register_user(st.args[0], static_cast<uint32_t>(std::stoul(st.args[1])));
        outcome[st.args[0]] = res.ok ? std::nullopt : std::optional(res.code);
        if (!res.ok) r.message = "rejected: " + res.message;
        register_ms.push_back(res.ms);
      } else if (st.op == "file") {
        client::Meta meta;
        Bytes text;
        for (size_t k = 4; k < st.args.size(); ++k) {
          auto eq = st.args[k].find('=');
          std::string key = st.args[k].substr(0, eq), value = st.args[k].substr(eq + 1);
          if (key == "text") {
            text.assign(value.begin(), value.end());
          } else {
            meta[key] = value;
          }
        }
        std::optional<size_t> idx;
        if (st.args[2] != "next") idx = std::stoul(st.args[2]);
        StepResult res = cluster->file(st.args[0], st.args[1], idx, meta, text,
                                       static_cast<uint32_t>(std::stoul(st.args[3])));
        outcome[st.args[0]] = res.ok ? std::nullopt : std::optional(res.code);
        if (!res.ok) r.message = "rejected: " + res.message;
        file_ms.push_back(res.ms);
      } else if (st.op == "decoys") {
        std::vector<std::string> pool(st.args.begin() + 1, st.args.end());
        size_t filed = emit_decoys(*cluster, pool, std::stoul(st.args[0]), decoy_rng);
        r.message = std::to_string(filed) + " decoys";
      } else if (st.op == "expect_reveal") {
        std::set<std::string> want(st.args.begin(), st.args.end());
        for (uint32_t j : cluster->honest()) {
          auto got = cluster->revealed_labels(j);
          if (got != want) {
            fail("escrow " + std::to_string(j) + " revealed " + joined(got) + ", expected " + joined(want));
            break;
          }
        }
      } else if (st.op == "expect_abort") {
        uint32_t want = static_cast<uint32_t>(std::stoul(st.args[0]));
        auto got = cluster->named_culprits();
        if (got != std::set<uint32_t>{want}) {
          std::set<std::string> names;
          for (uint32_t c : got) names.insert(std::to_string(c));
          fail("culprits " + joined(names) + ", expected {" + st.args[0] + "}");
        }
      } else if (st.op == "expect_reject") {
        Errc want = *parse_errc(st.args[1]);
        auto it = outcome.find(st.args[0]);
        if (it == outcome.end()) {
          fail("no step labelled '" + st.args[0] + "'");
        } else if (it->second != want) {
          fail("outcome " + (it->second ? std::string(errc_name(*it->second)) : std::string("accepted")) +
               ", expected " + st.args[1]);
        }
      } else if (st.op == "expect_converged") {
        if (!cluster->converged()) fail("honest escrows diverged");
      }
    } catch (const std::exception& e) {
      fail(e.what());
    }
    r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (!r.ok && rep.passed) {
      rep.passed = false;
      rep.first_failure = i;
    }
    rep.steps.push_back(std::move(r));
  }
  rep.converged = cluster->converged();
  double wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall).count();
  rep.metrics = collect_metrics(*cluster, std::move(register_ms), std::move(file_ms), wall_s);
  if (keep) *keep = std::move(cluster);
  return rep;
}

ScenarioReport run_scenario_strict(const Scenario& s) {
  ScenarioReport rep = run_scenario(s);
  if (rep.first_failure) {
    const StepReport& st = rep.steps[*rep.first_failure];
    throw Error(Errc::kAssertionFailed, "step " + std::to_string(st.index) + " (line " + std::to_string(st.line) +
                                            ", " + st.op + "): " + st.message);
  }
  return rep;
}

}  // namespace sae::harness
