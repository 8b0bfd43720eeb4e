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

#include "sae/harness/perf.hpp"

#include <algorithm>
#include <sstream>

#include "sae/errors.hpp"
#include "sae/harness/cluster.hpp"
#include "sae/harness/fuzz.hpp"
#include "sae/harness/tcp_transport.hpp"

namespace sae::harness {

namespace {

double ms_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t).count();
}

Bytes as_bytes_of(const std::string& s) { return Bytes(s.begin(), s.end()); }

}  // namespace

double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

PerfPoint run_perf_point(const PerfOptions& o, uint32_t n) {
  if (!o.tcp && o.delay.count() > 0) throw Error(Errc::kInvalidConfig, "link delay needs the TCP backend");
  ClusterOptions co;
  co.cfg = ProtocolConfig::for_escrows(n, std::max<uint32_t>(o.keys + o.decoys, 1));
  co.seed = o.seed;
  std::unique_ptr<TransportFactory> transport;
  if (o.tcp) {
    TcpTransport::Options to;
    to.link_delay = o.delay;
    to.seed = o.seed;
    transport = std::make_unique<TcpTransport>(to);
  }
  auto wall = std::chrono::steady_clock::now();
  Cluster c(co, std::move(transport));
  PerfPoint p;
  p.n = n;
  p.delay_ms = o.delay.count();
  auto t0 = std::chrono::steady_clock::now();
  c.initialize();
  p.init_ms = ms_since(t0);

  Rng rng = Rng::from_u64(o.seed).fork("perf");
  std::vector<double> reg, file;
  std::vector<std::string> users;
  for (uint32_t u = 0; u < o.users; ++u) {
    users.push_back("user" + std::to_string(u));
    StepResult r = c.register_user(users.back(), o.keys + (u == 0 ? o.decoys : 0));
    if (!r.ok) throw Error(r.code, "perf registration: " + r.message);
    reg.push_back(r.ms);
  }
  // Decoys go at random points of the genuine sequence.
  std::vector<bool> order(o.filings, false);
  if (!users.empty()) order.insert(order.end(), o.decoys, true);
  for (size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.uniform(i)]);
  size_t genuine = 0;
  for (bool decoy : order) {
    if (decoy) {
      emit_decoys(c, {users[0]}, 1, rng);
      continue;
    }
    const std::string& who = users[genuine % users.size()];
    if (c.client(who).next_unused() >= c.client(who).keys().size()) break;
    client::Meta meta{{"accused", "person" + std::to_string(rng.uniform(3))}, {"category", "other"}};
    StepResult r = c.file("w" + std::to_string(genuine), who, std::nullopt, meta,
                          as_bytes_of("workload " + std::to_string(genuine)), workload_threshold(rng));
    file.push_back(r.ms);
    ++genuine;
  }

  auto e2e = std::chrono::steady_clock::now();
  bool ok = true;
  for (const char* u : {"probeA", "probeB"}) {
    StepResult r = c.register_user(u, 1);
    ok = ok && r.ok;
    reg.push_back(r.ms);
  }
  client::Meta probe{{"accused", "probe-target"}, {"category", "other"}};
  for (const char* u : {"probeA", "probeB"}) {
    StepResult r = c.file(std::string("probe-") + u, u, std::nullopt, probe, as_bytes_of(u), 2);
    ok = ok && r.ok;
    file.push_back(r.ms);
  }
  p.e2e_ms = ms_since(e2e);
  auto h = c.honest();
  for (uint32_t j : h) {
    auto rev = c.revealed_labels(j);
    ok = ok && rev.count("probe-probeA") && rev.count("probe-probeB");
  }
  if (!ok) p.e2e_ms = -1;
  p.register_ms = median(reg);
  p.file_ms = median(file);
  p.converged = c.converged();
  p.metrics = collect_metrics(c, reg, file, std::chrono::duration<double>(std::chrono::steady_clock::now() - wall).count());
  return p;
}

PerfReport run_perf(const PerfOptions& o) {
  PerfReport rep;
  for (uint32_t n : o.escrows) rep.points.push_back(run_perf_point(o, n));
  return rep;
}

std::string PerfReport::text() const {
  std::ostringstream s;
  s << "perf\n";
  for (const auto& p : points) {
    s << "  n=" << p.n << " delay_ms=" << p.delay_ms << " init_ms=" << p.init_ms << " register_ms=" << p.register_ms
      << " file_ms=" << p.file_ms << " e2e_ms=" << p.e2e_ms << " registrations_per_sec="
      << p.metrics.registrations_per_sec() << " allegations_per_min=" << p.metrics.allegations_per_min()
      << " dvrf_total=" << p.metrics.dvrf.total() << " converged=" << (p.converged ? "yes" : "no") << "\n";
  }
  return s.str();
}

std::string PerfReport::csv() const {
  std::ostringstream s;
  s << "n,delay_ms,init_ms,register_ms_median,file_ms_median,e2e_ms," << Metrics::csv_header() << "\n";
  for (const auto& p : points) {
    s << p.n << "," << p.delay_ms << "," << p.init_ms << "," << p.register_ms << "," << p.file_ms << "," << p.e2e_ms
      << "," << p.metrics.csv_row() << "\n";
  }
  return s.str();
}

}  // namespace sae::harness
