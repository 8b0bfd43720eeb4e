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

#ifndef SAE_HARNESS_FUZZ_HPP_
#define SAE_HARNESS_FUZZ_HPP_

#include <optional>
#include <string>
#include <vector>

#include "sae/algebra/rng.hpp"
#include "sae/harness/cluster.hpp"

namespace sae::harness {

struct FuzzOptions {
  size_t trials = 1000;
  size_t max_allegations = 12;
  uint32_t max_classes = 4;
  uint32_t max_threshold = 10;
  uint64_t seed = 1;
  uint32_t escrows = 3;
  bool end_to_end = false;  // real escrows and real crypto instead of the bare engine
  std::optional<uint32_t> force_threshold;
};

struct FuzzFiling {
  uint32_t meta_class = 0;
  uint32_t t = 1;
};

struct FuzzReport {
  size_t trials = 0;
  size_t filings = 0;
  size_t divergences = 0;
  std::optional<std::string> first_divergence;  // replayable scenario text
  double seconds = 0;
  uint64_t dvrfs = 0;

  std::string text() const;
};

std::vector<FuzzFiling> random_filings(const FuzzOptions& o, Rng& rng);
// A scenario file reproducing a trial end to end.
std::string fuzz_scenario_text(const FuzzOptions& o, uint64_t trial_seed, const std::vector<FuzzFiling>& f);

FuzzReport fuzz_bucketing(const FuzzOptions& o);

// Decoy filings from identities in `pool` that hold unused keys: random
// 256-bit accused, thresholds from the perf workload. Returns the number filed.
size_t emit_decoys(Cluster& c, const std::vector<std::string>& pool, size_t count, Rng& rng);

// Truncated exponential with mean 5 on [2, 20], resampling out-of-range draws.
uint32_t workload_threshold(Rng& rng);

}  // namespace sae::harness

#endif  // SAE_HARNESS_FUZZ_HPP_
