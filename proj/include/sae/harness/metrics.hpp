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

#ifndef SAE_HARNESS_METRICS_HPP_
#define SAE_HARNESS_METRICS_HPP_

#include <map>
#include <string>
#include <vector>

#include "sae/escrow/escrow.hpp"

namespace sae::harness {

class Cluster;

struct Metrics {
  escrow::DvrfCounters dvrf;
  std::map<std::string, double> dvrf_per_user;
  std::vector<double> register_ms;
  std::vector<double> file_ms;
  uint64_t registered_keys = 0;
  uint64_t filings = 0;
  uint64_t reveals = 0;
  uint64_t mpc_sessions = 0;
  double wall_s = 0;

  double registrations_per_sec() const;
  double allegations_per_min() const;
  std::string text() const;
  static std::string csv_header();
  std::string csv_row() const;
};

// Counters from the first honest escrow plus the supplied timings.
Metrics collect_metrics(const Cluster& c, std::vector<double> register_ms, std::vector<double> file_ms,
                        double wall_s);

double mean(const std::vector<double>& v);

}  // namespace sae::harness

#endif  // SAE_HARNESS_METRICS_HPP_
