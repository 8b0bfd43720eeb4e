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

#include <gtest/gtest.h>

#include <thread>

#include "sae/errors.hpp"
#include "sae/harness/cluster.hpp"
#include "sae/harness/tcp_transport.hpp"
#include "sae/transport/tcp.hpp"

namespace sae::transport {
namespace {

using std::chrono::milliseconds;

Bytes text(std::string_view s) { return Bytes(s.begin(), s.end()); }

struct Mesh {
  Rng rng = Rng::from_u64(60);
  crypto::CertificateAuthority ca = crypto::CertificateAuthority::generate(rng);
  std::vector<crypto::KeyPair> keys;
  PeerKeys peers;
  std::vector<std::unique_ptr<TcpNetwork>> nets;
  std::map<NodeId, Address> addrs;

  explicit Mesh(uint32_t n, TcpNetwork::Options o = {}) {
    peers.ca = ca.public_key();
    for (uint32_t j = 1; j <= n; ++j) {
      keys.push_back(crypto::KeyPair::generate(rng));
      peers.escrows[j] = keys.back().pk;
    }
    for (uint32_t j = 1; j <= n; ++j) {
      nets.push_back(std::make_unique<TcpNetwork>(NodeIdentity{j, keys[j - 1], std::nullopt}, peers, o));
      addrs[j] = {"127.0.0.1", nets.back()->listen({"127.0.0.1", 0})};
    }
    std::vector<NodeId> all;
    for (uint32_t j = 1; j <= n; ++j) {
      std::map<NodeId, Address> lower;
      for (uint32_t k = 1; k < j; ++k) lower[k] = addrs[k];
      nets[j - 1]->connect(lower);
      all.push_back(j);
    }
    for (auto& net : nets) net->wait_for_peers(all, std::chrono::seconds(5));
  }

  std::unique_ptr<TcpNetwork> client(NodeId id, const crypto::CertificateAuthority& issuer) {
    auto key = crypto::KeyPair::generate(rng);
    auto cert = issuer.issue("c" + std::to_string(id), key.pk, rng);
    auto c = std::make_unique<TcpNetwork>(NodeIdentity{id, key, cert}, peers, TcpNetwork::Options{});
    c->connect(addrs);
    return c;
  }
};

template <typename Fn>
void run_all(std::vector<TcpNetwork*> nets, const std::string& session, const std::vector<NodeId>& members, Fn fn) {
  std::vector<std::thread> ts;
  for (TcpNetwork* n : nets) {
    ts.emplace_back([=] {
      auto ep = n->open(session, n->self(), members);
      fn(*ep);
    });
  }
  for (auto& t : ts) t.join();
}

TEST(Tcp, RoundsDeliverInOrder) {
  Mesh m(3);
  std::map<NodeId, std::vector<uint64_t>> seen;
  std::mutex mu;
  run_all({m.nets[0].get(), m.nets[1].get(), m.nets[2].get()}, "s", {1, 2, 3}, [&](Endpoint& ep) {
    if (ep.self() != 1) {
      for (int i = 0; i < 100; ++i) ep.send(1, "m", text(std::to_string(i)));
    }
    Inbox in = ep.end_round();
    EXPECT_TRUE(in.timed_out().empty());
    ep.send_all(ep.members(), "r1", text("x"));
    Inbox in1 = ep.end_round();
    EXPECT_EQ(in1.all("r1").size(), 2u);
    EXPECT_TRUE(in1.all("m").empty());
    std::lock_guard<std::mutex> lock(mu);
    for (const Message& msg : in.messages()) {
      EXPECT_EQ(msg.body, text(std::to_string(msg.seq)));
      seen[ep.self()].push_back(msg.sender * 1000 + msg.seq);
    }
  });
  ASSERT_EQ(seen[1].size(), 200u);
  EXPECT_TRUE(std::is_sorted(seen[1].begin(), seen[1].end()));
  EXPECT_TRUE(seen[2].empty());
}

TEST(Tcp, SilentPeerIsBottomAfterTheBound) {
  TcpNetwork::Options o;
  o.round_timeout = milliseconds(300);
  Mesh m(3, o);
  auto start = std::chrono::steady_clock::now();
  run_all({m.nets[0].get(), m.nets[1].get()}, "cut", {1, 2, 3}, [&](Endpoint& ep) {
    ep.send_all(ep.members(), "m", text("x"));
    Inbox in = ep.end_round();
    EXPECT_EQ(in.timed_out(), std::set<NodeId>{3});
    EXPECT_EQ(in.all("m").size(), 1u);
  });
  EXPECT_GE(std::chrono::steady_clock::now() - start, milliseconds(300));
}

TEST(Tcp, LeaveReleasesPeers) {
  Mesh m(3);
  run_all({m.nets[0].get(), m.nets[1].get(), m.nets[2].get()}, "leave", {1, 2, 3}, [&](Endpoint& ep) {
    if (ep.self() == 2) {
      ep.leave();
      return;
    }
    for (int r = 0; r < 3; ++r) EXPECT_TRUE(ep.end_round().timed_out().empty());
  });
}

TEST(Tcp, ClientsNeedTheRightKeys) {
  Mesh m(3);
  auto c = m.client(1000, m.ca);
  EXPECT_EQ(c->connected(), (std::set<NodeId>{1, 2, 3}));
  std::vector<TcpNetwork*> all{m.nets[0].get(), m.nets[1].get(), m.nets[2].get(), c.get()};
  run_all(all, "withclient", {1, 2, 3, 1000}, [&](Endpoint& ep) {
    if (ep.self() != 1000) ep.send(1000, "hi", text("x"));
    Inbox in = ep.end_round();
    if (ep.self() == 1000) {
      EXPECT_EQ(in.all("hi").size(), 3u);
    }
  });

  // Certificate from an unknown issuer.
  Rng rng = Rng::from_u64(61);
  auto rogue = crypto::CertificateAuthority::generate(rng);
  try {
    m.client(1001, rogue);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(e.code(), Errc::kIo);
  }
  // Claiming an escrow id without its key.
  auto key = crypto::KeyPair::generate(rng);
  TcpNetwork fake(NodeIdentity{3, key, std::nullopt}, m.peers, TcpNetwork::Options{});
  try {
    fake.connect({{1, m.addrs[1]}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(e.code(), Errc::kIo);
  }
  std::this_thread::sleep_for(milliseconds(100));
  EXPECT_GE(m.nets[0]->frames_rejected(), 2u);
  EXPECT_TRUE(m.nets[0]->connected().count(3));  // the genuine link survives
}

TEST(Tcp, BoardOrderingAndAnonymity) {
  Rng rng = Rng::from_u64(62);
  PeerKeys peers;
  auto board_key = crypto::KeyPair::generate(rng);
  auto e1 = crypto::KeyPair::generate(rng), e2 = crypto::KeyPair::generate(rng);
  peers.board = board_key.pk;
  peers.escrows = {{1, e1.pk}, {2, e2.pk}};
  BoardServer server(NodeIdentity{kBoardId, board_key, std::nullopt}, peers);
  Address addr{"127.0.0.1", server.listen({"127.0.0.1", 0})};
  RemoteBoard a(addr, NodeIdentity{1, e1, std::nullopt}, peers), b(addr, NodeIdentity{2, e2, std::nullopt}, peers);
  EXPECT_EQ(a.post(text("one"), 1), 0u);
  EXPECT_EQ(b.post(text("two"), std::nullopt), 1u);
  EXPECT_THROW(b.post(text("three"), 1), Error);
  auto va = a.read(0), vb = b.read(0);
  ASSERT_EQ(va.size(), 2u);
  EXPECT_EQ(va, vb);
  EXPECT_EQ(va[0].sender, 1u);
  EXPECT_TRUE(va[1].anonymous);
  EXPECT_EQ(va[1].sender, 0u);
  EXPECT_TRUE(a.read(2).empty());
  std::thread poster([&] {
    std::this_thread::sleep_for(milliseconds(50));
    b.post(text("late"), 2);
  });
  auto w = a.wait(2, milliseconds(3000));
  poster.join();
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0].payload, text("late"));
}

TEST(Tcp, ClusterRevealsOverSockets) {
  harness::ClusterOptions co;
  co.cfg = ProtocolConfig::for_escrows(3, 2);
  harness::Cluster c(co, std::make_unique<harness::TcpTransport>(harness::TcpTransport::Options{}));
  c.initialize();
  ASSERT_TRUE(c.register_user("alice", 1).ok);
  ASSERT_TRUE(c.register_user("bob", 1).ok);
  client::Meta meta{{"accused", "mallory"}, {"category", "other"}};
  ASSERT_TRUE(c.file("a", "alice", std::nullopt, meta, text("first"), 2).ok);
  EXPECT_TRUE(c.revealed_labels(1).empty());
  ASSERT_TRUE(c.file("b", "bob", std::nullopt, meta, text("second"), 2).ok);
  for (uint32_t j : c.honest()) EXPECT_EQ(c.revealed_labels(j), (std::set<std::string>{"a", "b"}));
  EXPECT_TRUE(c.converged());
  EXPECT_TRUE(c.honest_reports().empty());
}

}  // namespace
}  // namespace sae::transport
