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

#ifndef SAE_HARNESS_SCENARIO_HPP_
#define SAE_HARNESS_SCENARIO_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sae/harness/cluster.hpp"
#include "sae/harness/metrics.hpp"

namespace sae::harness {

// Line-delimited scenario text, first non-comment line "sae-scenario v1":
//
//   config escrows=5 keys=2 seed=7 [quota_period_ms=N] [step_timeout_ms=N]
//   corrupt <escrow> <behavior>
//   register <identity> <count>
//   file <label> <identity> <key-idx|next> <t> accused=<id> category=<c> [field=value ...] [text="..."]
//   decoys <count> <identity> [identity ...]
//   expect_reveal [label ...]      exact revealed set at every honest escrow
//   expect_abort <escrow>          exact set of culprits named so far
//   expect_reject <label> <code>   the filing (or registration, by identity) failed with <code>
//   expect_converged               honest escrows hold identical buckets and identities
//
// '#' starts a comment; values may be double-quoted.
struct ScenarioStep {
  size_t line = 0;
  std::string op;
  std::vector<std::string> args;
};

struct Scenario {
  ClusterOptions options;
  std::vector<std::pair<uint32_t, vss::Behavior>> corruptions;
  std::vector<ScenarioStep> steps;
};

inline constexpr std::string_view kScenarioHeader = "sae-scenario v1";

std::vector<std::string> tokenize(const std::string& line);
// Throws kDecode with the offending line number.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

struct StepReport {
  size_t index = 0;
  size_t line = 0;
  std::string op;
  bool ok = true;
  std::string message;
  double ms = 0;
};

struct ScenarioReport {
  std::vector<StepReport> steps;
  bool passed = true;
  std::optional<size_t> first_failure;  // step index
  bool converged = true;
  Metrics metrics;

  std::string text() const;
};

// Runs every step. Failed expectations mark the report failed and keep
// going; the cluster is left behind for inspection.
ScenarioReport run_scenario(const Scenario& s, std::unique_ptr<Cluster>* keep = nullptr,
                            std::unique_ptr<TransportFactory> transport = nullptr);
// Throws kAssertionFailed naming the first failed step.
ScenarioReport run_scenario_strict(const Scenario& s);

}  // namespace sae::harness

#endif  // SAE_HARNESS_SCENARIO_HPP_
