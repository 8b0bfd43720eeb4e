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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sae/bucketing/bucketing.hpp"
#include "sae/dvrf/dvrf.hpp"
#include "sae/errors.hpp"
#include "sae/harness/cluster.hpp"
#include "sae/harness/fuzz.hpp"
#include "sae/harness/scenario.hpp"

namespace py = pybind11;

namespace sae {
namespace {

py::bytes to_py(const Bytes& b) { return py::bytes(reinterpret_cast<const char*>(b.data()), b.size()); }

Bytes from_py(const py::bytes& b) {
  std::string_view s = b;
  return Bytes(s.begin(), s.end());
}

py::dict step_dict(const harness::StepResult& r) {
  py::dict d;
  d["ok"] = r.ok;
  d["code"] = r.ok ? std::string() : std::string(errc_name(r.code));
  d["message"] = r.message;
  d["ms"] = r.ms;
  return d;
}

py::dict metrics_dict(const harness::Metrics& m) {
  py::dict d;
  d["dvrf_registration"] = m.dvrf.registration;
  d["dvrf_matching"] = m.dvrf.matching;
  d["dvrf_reveal"] = m.dvrf.reveal;
  d["dvrf_total"] = m.dvrf.total();
  d["dvrf_per_user"] = m.dvrf_per_user;
  d["registered_keys"] = m.registered_keys;
  d["filings"] = m.filings;
  d["reveals"] = m.reveals;
  d["mpc_sessions"] = m.mpc_sessions;
  return d;
}

// Serial access only: a cluster runs its escrows on threads of its own.
class PyCluster {
 public:
  PyCluster(uint32_t escrows, uint32_t keys, uint64_t seed, const std::map<uint32_t, std::string>& corrupt) {
    harness::ClusterOptions o;
    o.cfg = ProtocolConfig::for_escrows(escrows, keys);
    o.seed = seed;
    for (const auto& [j, name] : corrupt) o.behaviors[j] = vss::parse_behavior(name);
    cluster_ = std::make_unique<harness::Cluster>(o);
    cluster_->initialize();
  }

  py::dict register_user(const std::string& identity, uint32_t count) {
    harness::StepResult r;
    {
      py::gil_scoped_release nogil;
      r = cluster_->register_user(identity, count);
    }
    return step_dict(r);
  }

  py::dict file(const std::string& label, const std::string& identity, const std::string& accused,
                const std::string& category, const std::string& text, uint32_t t) {
    client::Meta meta{{"accused", accused}, {"category", category}};
    harness::StepResult r;
    {
      py::gil_scoped_release nogil;
      r = cluster_->file(label, identity, std::nullopt, meta, Bytes(text.begin(), text.end()), t);
    }
    return step_dict(r);
  }

  std::set<std::string> revealed(uint32_t j) const { return cluster_->revealed_labels(j); }

  py::list reveals(uint32_t j) const {
    py::list out;
    for (const auto& r : cluster_->escrow(j).reveals()) {
      py::dict d;
      const harness::FiledAllegation* f = cluster_->find_filed(r.id);
      d["label"] = f ? f->label : std::string();
      d["identity"] = r.identity;
      d["t"] = r.t;
      d["text"] = std::string(r.text.begin(), r.text.end());
      d["seq"] = r.seq;
      out.append(d);
    }
    return out;
  }

  std::vector<uint32_t> honest() const { return cluster_->honest(); }
  std::set<uint32_t> culprits() const { return cluster_->named_culprits(); }
  bool converged() const { return cluster_->converged(); }
  double dvrf_for_user(const std::string& identity) const { return cluster_->dvrf_for_user(identity); }
  py::dict metrics() const { return metrics_dict(harness::collect_metrics(*cluster_, {}, {}, 0)); }

 private:
  std::unique_ptr<harness::Cluster> cluster_;
};

py::dict scenario(const std::string& text) {
  harness::Scenario s = harness::parse_scenario(text);
  harness::ScenarioReport rep;
  {
    py::gil_scoped_release nogil;
    rep = harness::run_scenario(s);
  }
  py::dict d;
  d["passed"] = rep.passed;
  d["converged"] = rep.converged;
  py::list steps;
  for (const auto& st : rep.steps) {
    py::dict x;
    x["line"] = st.line;
    x["op"] = st.op;
    x["ok"] = st.ok;
    x["message"] = st.message;
    steps.append(x);
  }
  d["steps"] = steps;
  d["metrics"] = metrics_dict(rep.metrics);
  d["text"] = rep.text();
  return d;
}

py::dict fuzz(size_t trials, uint64_t seed, bool end_to_end, size_t max_allegations, uint32_t max_classes,
              uint32_t max_threshold) {
  harness::FuzzOptions o;
  o.trials = trials;
  o.seed = seed;
  o.end_to_end = end_to_end;
  o.max_allegations = max_allegations;
  o.max_classes = max_classes;
  o.max_threshold = max_threshold;
  harness::FuzzReport rep;
  {
    py::gil_scoped_release nogil;
    rep = harness::fuzz_bucketing(o);
  }
  py::dict d;
  d["trials"] = rep.trials;
  d["filings"] = rep.filings;
  d["divergences"] = rep.divergences;
  d["first_divergence"] = rep.first_divergence;
  d["seconds"] = rep.seconds;
  return d;
}

// Indices of the filings an ideal functionality reveals, given (meta, t) pairs.
std::set<size_t> oracle_reveal(const std::vector<std::pair<std::string, uint32_t>>& filings) {
  std::vector<bucketing::OracleFiling> in;
  for (size_t i = 0; i < filings.size(); ++i) {
    in.push_back({ByteWriter().u64(i).take(), filings[i].first, filings[i].second});
  }
  auto revealed = bucketing::oracle_reveal_predicate(in);
  std::set<size_t> out;
  for (size_t i = 0; i < in.size(); ++i) {
    if (revealed.count(in[i].id)) out.insert(i);
  }
  return out;
}

}  // namespace
}  // namespace sae

PYBIND11_MODULE(_sae, m) {
  using namespace sae;
  m.doc() = "Threshold-gated allegation escrow";
  static py::exception<Error> sae_error(m, "SaeError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(sae_error, (std::string(errc_name(e.code())) + ": " + e.what()).c_str());
    }
  });

  py::class_<PyCluster>(m, "Cluster")
      .def(py::init<uint32_t, uint32_t, uint64_t, const std::map<uint32_t, std::string>&>(), py::arg("escrows") = 3,
           py::arg("keys") = 2, py::arg("seed") = 1, py::arg("corrupt") = std::map<uint32_t, std::string>{})
      .def("register", &PyCluster::register_user, py::arg("identity"), py::arg("count") = 1)
      .def("file", &PyCluster::file, py::arg("label"), py::arg("identity"), py::arg("accused"),
           py::arg("category") = "other", py::arg("text") = "", py::arg("t") = 2)
      .def("revealed", &PyCluster::revealed, py::arg("escrow"))
      .def("reveals", &PyCluster::reveals, py::arg("escrow"))
      .def_property_readonly("honest", &PyCluster::honest)
      .def_property_readonly("culprits", &PyCluster::culprits)
      .def("converged", &PyCluster::converged)
      .def("dvrf_for_user", &PyCluster::dvrf_for_user)
      .def("metrics", &PyCluster::metrics);

  m.def("run_scenario", &scenario, py::arg("text"));
  m.def("fuzz", &fuzz, py::arg("trials") = 100, py::arg("seed") = 1, py::arg("end_to_end") = false,
        py::arg("max_allegations") = 12, py::arg("max_classes") = 4, py::arg("max_threshold") = 10);
  m.def("oracle_reveal", &oracle_reveal, py::arg("filings"));
  m.def(
      "reference_vrf",
      [](const py::bytes& sk, const py::bytes& x) {
        const Field& f = Field::bls12_381();
        dvrf::VrfOutput out = dvrf::reference_vrf(f.reduce(from_py(sk)), f.reduce(from_py(x)));
        return py::make_tuple(to_py(out.value.to_bytes()), to_py(out.proof->to_bytes()));
      },
      py::arg("sk"), py::arg("x"), "(value, proof) for secret sk and input x, both reduced mod q.");
  m.def(
      "vrf_public_key",
      [](const py::bytes& sk) {
        return to_py(PairingContext::get().g2.pow(Field::bls12_381().reduce(from_py(sk))).to_bytes());
      },
      py::arg("sk"));
  m.def(
      "verify_vrf",
      [](const py::bytes& pk, const py::bytes& proof, const py::bytes& x) {
        try {
          return dvrf::verify_vrf(G2::from_bytes(from_py(pk)), G1::from_bytes(from_py(proof)),
                                  Field::bls12_381().reduce(from_py(x)));
        } catch (const Error&) {
          return false;  // undecodable points verify nothing
        }
      },
      py::arg("pk"), py::arg("proof"), py::arg("x"));
}
