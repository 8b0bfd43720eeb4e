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

// sae: harness driver and standalone escrow, board, CA and client processes.

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "deployment.hpp"
#include "sae/client/client.hpp"
#include "sae/crypto/keystore.hpp"
#include "sae/errors.hpp"
#include "sae/escrow/escrow.hpp"
#include "sae/harness/fuzz.hpp"
#include "sae/harness/perf.hpp"
#include "sae/harness/scenario.hpp"
#include "sae/harness/tcp_transport.hpp"

namespace {

using namespace sae;

std::atomic<bool> g_stop{false};

void on_signal(int) { g_stop = true; }

std::string read_password(const std::string& file) {
  if (!file.empty()) {
    std::ifstream in(file);
    std::string pw;
    if (!in || !std::getline(in, pw)) throw Error(Errc::kIo, "cannot read password file " + file);
    return pw;
  }
  if (const char* env = std::getenv("SAE_PASSWORD")) return env;
  throw Error(Errc::kInvalidConfig, "set SAE_PASSWORD or pass --password-file");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::kIo, "cannot write " + path);
  out << text;
}

int harness_run(const std::string& path, bool tcp) {
  harness::Scenario s = harness::load_scenario(path);
  std::unique_ptr<harness::TransportFactory> transport;
  if (tcp) {
    harness::TcpTransport::Options o;
    o.seed = s.options.seed;
    transport = std::make_unique<harness::TcpTransport>(o);
  }
  harness::ScenarioReport r = harness::run_scenario(s, nullptr, std::move(transport));
  std::cout << r.text();
  if (r.first_failure) {
    const auto& st = r.steps[*r.first_failure];
    std::cerr << "AssertionFailed: step " << st.index << " (line " << st.line << "): " << st.message << "\n";
    return 1;
  }
  return 0;
}

// Blocks until the board has a quorum of PK_I announcements.
G2 mac_key_of(const tools::Deployment& d, transport::BulletinBoard& board) {
  return escrow::wait_for_mac_key(board, d.directory(), d.cfg, std::chrono::seconds(60));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Threshold-gated allegation escrow"};
  app.require_subcommand(1);
  std::string password_file;
  app.add_option("--password-file", password_file, "First line is the key-file password (else $SAE_PASSWORD)");

  // harness
  auto* harness_cmd = app.add_subcommand("harness", "Scenarios, fuzzing and performance runs");
  harness_cmd->require_subcommand(1);
  std::string scenario_path;
  bool run_tcp = false;
  auto* run_cmd = harness_cmd->add_subcommand("run", "Execute a scenario file");
  run_cmd->add_option("scenario", scenario_path)->required()->check(CLI::ExistingFile);
  run_cmd->add_flag("--tcp", run_tcp, "Localhost sockets instead of the simulated network");

  harness::FuzzOptions fo;
  std::string dump_path;
  auto* fuzz_cmd = harness_cmd->add_subcommand("fuzz", "Random filings against the brute-force oracle");
  fuzz_cmd->add_option("--trials", fo.trials)->check(CLI::PositiveNumber);
  fuzz_cmd->add_option("--seed", fo.seed);
  fuzz_cmd->add_option("--max-allegations", fo.max_allegations)->check(CLI::PositiveNumber);
  fuzz_cmd->add_option("--max-classes", fo.max_classes)->check(CLI::PositiveNumber);
  fuzz_cmd->add_option("--max-threshold", fo.max_threshold)->check(CLI::PositiveNumber);
  fuzz_cmd->add_option("--escrows", fo.escrows);
  fuzz_cmd->add_flag("--e2e", fo.end_to_end, "Real escrows and cryptography");
  fuzz_cmd->add_option("--dump", dump_path, "Write the first divergent trial as a scenario file");

  harness::PerfOptions po;
  int64_t delay_ms = 0;
  std::string csv_path;
  auto* perf_cmd = harness_cmd->add_subcommand("perf", "Latency and throughput per escrow count");
  perf_cmd->add_option("--escrows", po.escrows, "Escrow counts (repeatable)")->expected(1, -1);
  perf_cmd->add_option("--delay", delay_ms, "Per-link delay in ms (TCP only)")->check(CLI::NonNegativeNumber);
  perf_cmd->add_flag("--tcp", po.tcp);
  perf_cmd->add_option("--users", po.users);
  perf_cmd->add_option("--keys", po.keys);
  perf_cmd->add_option("--filings", po.filings);
  perf_cmd->add_option("--decoys", po.decoys);
  perf_cmd->add_option("--seed", po.seed);
  perf_cmd->add_option("--csv", csv_path);

  // setup
  auto* setup_cmd = app.add_subcommand("setup", "Create keys and deployment.json for a localhost deployment");
  std::string dir = "deployment", host = "127.0.0.1";
  uint32_t n = 3, l = 10;
  uint16_t base_port = 7400;
  setup_cmd->add_option("--out", dir);
  setup_cmd->add_option("--escrows", n);
  setup_cmd->add_option("--keys", l);
  setup_cmd->add_option("--host", host);
  setup_cmd->add_option("--base-port", base_port, "Board port; escrow j listens on base + j");

  // board
  auto* board_cmd = app.add_subcommand("board", "Serve the bulletin board");
  board_cmd->add_option("--deployment", dir);

  // escrow
  auto* escrow_cmd = app.add_subcommand("escrow", "Run one escrow until interrupted");
  uint32_t index = 1;
  std::string behavior = "honest";
  int64_t round_timeout_ms = 20000;
  escrow_cmd->add_option("--deployment", dir);
  escrow_cmd->add_option("--index", index)->required();
  escrow_cmd->add_option("--behavior", behavior);
  escrow_cmd->add_option("--round-timeout-ms", round_timeout_ms);

  // ca
  auto* ca_cmd = app.add_subcommand("ca", "Issue client identities");
  ca_cmd->require_subcommand(1);
  auto* issue_cmd = ca_cmd->add_subcommand("issue", "Create a wallet holding a certified identity key");
  std::string identity, wallet;
  issue_cmd->add_option("--deployment", dir);
  issue_cmd->add_option("--identity", identity)->required();
  issue_cmd->add_option("--wallet", wallet)->required();

  // client
  auto* client_cmd = app.add_subcommand("client", "Register one-time keys and file allegations");
  client_cmd->require_subcommand(1);
  transport::NodeId node = transport::kFirstClientId;
  uint32_t count = 1;
  auto* reg_cmd = client_cmd->add_subcommand("register", "Obtain one-time keys");
  reg_cmd->add_option("--deployment", dir);
  reg_cmd->add_option("--wallet", wallet)->required();
  reg_cmd->add_option("--count", count);
  reg_cmd->add_option("--node", node)->check(CLI::Range(transport::kFirstClientId, UINT32_MAX));
  auto* file_cmd = client_cmd->add_subcommand("file", "File an allegation anonymously");
  std::string accused, category, text, categories_path;
  uint32_t threshold = 1;
  int64_t key_index = -1;
  file_cmd->add_option("--deployment", dir);
  file_cmd->add_option("--wallet", wallet)->required();
  file_cmd->add_option("--accused", accused)->required();
  file_cmd->add_option("--category", category)->required();
  file_cmd->add_option("--text", text)->required();
  file_cmd->add_option("--threshold", threshold)->required()->check(CLI::PositiveNumber);
  file_cmd->add_option("--key", key_index, "Key index (default: first unused)");
  file_cmd->add_option("--categories", categories_path)->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return harness_run(scenario_path, run_tcp);
    if (fuzz_cmd->parsed()) {
      harness::FuzzReport r = harness::fuzz_bucketing(fo);
      std::cout << r.text();
      if (r.first_divergence && !dump_path.empty()) write_text(dump_path, *r.first_divergence);
      return r.divergences == 0 ? 0 : 1;
    }
    if (perf_cmd->parsed()) {
      po.delay = std::chrono::milliseconds(delay_ms);
      harness::PerfReport r = harness::run_perf(po);
      std::cout << r.text();
      if (!csv_path.empty()) write_text(csv_path, r.csv());
      return 0;
    }

    if (setup_cmd->parsed()) {
      Rng rng = Rng::from_os();
      tools::create_deployment(dir, n, l, host, base_port, read_password(password_file), rng);
      std::cout << "wrote " << dir << "/deployment.json\n";
      return 0;
    }

    tools::Deployment d = tools::Deployment::load(dir);
    const std::string pw = read_password(password_file);

    if (board_cmd->parsed()) {
      transport::BoardServer server({transport::kBoardId, tools::load_key(d.path("board.key"), pw), std::nullopt},
                                    d.peer_keys());
      server.listen(d.board);
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cout << "board listening on " << d.board.host << ":" << d.board.port << std::endl;
      while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
      server.stop();
      return 0;
    }

    if (escrow_cmd->parsed()) {
      if (index < 1 || index > d.cfg.n) throw Error(Errc::kInvalidConfig, "escrow index out of range");
      crypto::KeyPair key = tools::load_key(d.path("escrow" + std::to_string(index) + ".key"), pw);
      transport::NodeIdentity self{index, key, std::nullopt};
      transport::TcpNetwork::Options no;
      no.round_timeout = std::chrono::milliseconds(round_timeout_ms);
      no.connect_timeout = std::chrono::seconds(120);
      transport::TcpNetwork net(self, d.peer_keys(), no);
      net.listen(d.escrow_addrs[index - 1]);
      net.connect(d.escrows_below(index));
      std::vector<transport::NodeId> all;
      for (uint32_t j = 1; j <= d.cfg.n; ++j) all.push_back(j);
      net.wait_for_peers(all, std::chrono::seconds(120));
      transport::RemoteBoard board(d.board, self, d.peer_keys());
      escrow::EscrowOptions eo;
      eo.behavior = vss::parse_behavior(behavior);
      eo.quota_period_ms = d.quota_period_ms;
      eo.store_path = d.path("escrow" + std::to_string(index) + ".store");
      eo.reveal_log_path = d.path("escrow" + std::to_string(index) + ".reveals.jsonl");
      escrow::Escrow e(index, key, d.directory(), d.cfg, net, board, Rng::from_os(), eo);
      e.initialize();
      std::cout << "escrow " << index << " ready" << std::endl;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      size_t seen = 0;
      while (!g_stop) {
        if (e.sync() == 0) std::this_thread::sleep_for(std::chrono::milliseconds(50));
        for (; seen < e.reveals().size(); ++seen) std::cout << escrow::reveal_json(e.reveals()[seen]) << std::endl;
      }
      return 0;
    }

    if (issue_cmd->parsed()) {
      Rng rng = Rng::from_os();
      crypto::CertificateAuthority ca(tools::load_key(d.path("ca.key"), pw));
      client::ClientIdentity id{identity, crypto::KeyPair::generate(rng), {}};
      id.cert = ca.issue(identity, id.key.pk, rng);
      client::Client c(id, d.directory(), d.cfg, transport::kFirstClientId, rng.fork("client"));
      c.save(wallet, pw);
      std::cout << "wallet for " << identity << " written to " << wallet << "\n";
      return 0;
    }

    if (reg_cmd->parsed() || file_cmd->parsed()) {
      Rng rng = Rng::from_os();
      client::Client c(client::ClientIdentity{}, d.directory(), d.cfg, node, rng.fork("client"));
      c.load(wallet, pw);
      transport::NodeIdentity self{node, c.identity().key, c.identity().cert};
      transport::RemoteBoard board(d.board, self, d.peer_keys());
      if (reg_cmd->parsed()) {
        G2 mac = mac_key_of(d, board);
        transport::TcpNetwork net(self, d.peer_keys(), transport::TcpNetwork::Options{});
        net.connect(d.all_escrows());
        auto keys = c.register_keys(board, net, count, mac);
        c.save(wallet, pw);
        std::cout << "registered " << keys.size() << " keys; " << c.keys().size() << " held\n";
        return 0;
      }
      auto categories = categories_path.empty() ? client::default_categories() : client::load_categories(categories_path);
      client::Meta meta = client::make_meta(accused, category, categories);
      size_t idx = key_index < 0 ? c.next_unused() : static_cast<size_t>(key_index);
      transport::AnonChannel channel(board, rng.next_u64());
      auto pkg = c.file(idx, meta, Bytes(text.begin(), text.end()), threshold, channel);
      channel.flush();
      c.save(wallet, pw);
      std::cout << "filed allegation " << to_hex(pkg.id()) << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
