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

#ifndef SAE_HARNESS_PERF_HPP_
#define SAE_HARNESS_PERF_HPP_

#include <chrono>
#include <string>
#include <vector>

#include "sae/harness/metrics.hpp"

namespace sae::harness {

struct PerfOptions {
  std::vector<uint32_t> escrows{3, 5, 7, 9};
  std::chrono::milliseconds delay{0};  // per-link, TCP backend only
  bool tcp = false;
  uint32_t users = 4;
  uint32_t keys = 2;      // registered per user
  uint32_t filings = 6;   // workload thresholds, a handful of accused
  uint32_t decoys = 0;    // interleaved at random positions
  uint64_t seed = 1;
};

struct PerfPoint {
  uint32_t n = 0;
  int64_t delay_ms = 0;
  double init_ms = 0;
  double register_ms = 0;  // median over all registrations
  double file_ms = 0;      // median over all filings
  // Two fresh users register one key each and file matching t=2
  // allegations; negative when the pair was not revealed.
  double e2e_ms = 0;
  bool converged = true;
  Metrics metrics;
};

struct PerfReport {
  std::vector<PerfPoint> points;

  std::string text() const;
  std::string csv() const;
};

PerfReport run_perf(const PerfOptions& o);
PerfPoint run_perf_point(const PerfOptions& o, uint32_t n);

double median(std::vector<double> v);

}  // namespace sae::harness

#endif  // SAE_HARNESS_PERF_HPP_
