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

#include "sae/harness/metrics.hpp"

#include <numeric>
#include <sstream>

#include "sae/harness/cluster.hpp"

namespace sae::harness {

double mean(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double Metrics::registrations_per_sec() const {
  double total_s = std::accumulate(register_ms.begin(), register_ms.end(), 0.0) / 1000.0;
  return total_s > 0 ? static_cast<double>(registered_keys) / total_s : 0.0;
}

double Metrics::allegations_per_min() const {
  double total_min = std::accumulate(file_ms.begin(), file_ms.end(), 0.0) / 60000.0;
  return total_min > 0 ? static_cast<double>(filings) / total_min : 0.0;
}

std::string Metrics::text() const {
  std::ostringstream o;
  o << "metrics\n"
    << "  dvrf.registration " << dvrf.registration << "\n"
    << "  dvrf.matching " << dvrf.matching << "\n"
    << "  dvrf.reveal " << dvrf.reveal << "\n"
    << "  dvrf.total " << dvrf.total() << "\n"
    << "  mpc_sessions " << mpc_sessions << "\n"
    << "  registered_keys " << registered_keys << "\n"
    << "  filings " << filings << "\n"
    << "  reveals " << reveals << "\n"
    << "  register_ms.mean " << mean(register_ms) << "\n"
    << "  file_ms.mean " << mean(file_ms) << "\n"
    << "  registrations_per_sec " << registrations_per_sec() << "\n"
    << "  allegations_per_min " << allegations_per_min() << "\n"
    << "  wall_s " << wall_s << "\n";
  for (const auto& [user, d] : dvrf_per_user) o << "  dvrf.user." << user << " " << d << "\n";
  return o.str();
}

std::string Metrics::csv_header() {
  return "dvrf_registration,dvrf_matching,dvrf_reveal,mpc_sessions,registered_keys,filings,reveals,"
         "register_ms_mean,file_ms_mean,registrations_per_sec,allegations_per_min,wall_s";
}

std::string Metrics::csv_row() const {
  std::ostringstream o;
  o << dvrf.registration << "," << dvrf.matching << "," << dvrf.reveal << "," << mpc_sessions << ","
    << registered_keys << "," << filings << "," << reveals << "," << mean(register_ms) << "," << mean(file_ms)
    << "," << registrations_per_sec() << "," << allegations_per_min() << "," << wall_s;
  return o.str();
}

Metrics collect_metrics(const Cluster& c, std::vector<double> register_ms, std::vector<double> file_ms,
                        double wall_s) {
  Metrics m;
  m.register_ms = std::move(register_ms);
  m.file_ms = std::move(file_ms);
  m.wall_s = wall_s;
  auto h = c.honest();
  if (h.empty()) return m;
  const escrow::Escrow& e = c.escrow(h[0]);
  m.dvrf = e.metrics().dvrf;
  m.mpc_sessions = e.metrics().mpc_sessions;
  m.reveals = e.reveals().size();
  m.registered_keys = m.dvrf.registration / 2;  // two DVRFs per registered key
  for (const auto& f : c.filed()) {
    if (!f.id.empty()) ++m.filings;
  }
  for (const auto& [user, _] : e.metrics().dvrf_by_identity) m.dvrf_per_user[user] = c.dvrf_for_user(user);
  return m;
}

}  // namespace sae::harness
