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

#include <set>

#include "common/runner.hpp"
#include "sae/errors.hpp"
#include "sae/transport/board.hpp"
#include "sae/transport/sim.hpp"

namespace sae::transport {
namespace {

using sae::testing::ids;
using sae::testing::run_session;

Bytes text(std::string_view s) { return Bytes(s.begin(), s.end()); }

TEST(SimNetwork, MessagesArriveAtTheEndOfTheirRound) {
  SimNetwork net;
  auto out = run_session<std::vector<size_t>>(net, "s", ids(3), [](Endpoint& ep) {
    std::vector<size_t> sizes;
    ep.send_all(ep.members(), "ping", text("r0"));
    Inbox in0 = ep.end_round();
    sizes.push_back(in0.all("ping").size());
    EXPECT_EQ(in0.get(ep.self(), "ping"), nullptr);
    for (const Message* m : in0.all("ping")) EXPECT_EQ(m->round, 0u);
    Inbox in1 = ep.end_round();  // nothing sent in round 1
    sizes.push_back(in1.messages().size());
    return sizes;
  });
  for (const auto& r : out) {
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(*r.value, (std::vector<size_t>{2, 0}));
  }
}

TEST(SimNetwork, InboxOrderIsCanonical) {
  SimNetwork net;
  auto out = run_session<std::vector<std::pair<NodeId, uint64_t>>>(net, "order", ids(4), [](Endpoint& ep) {
    if (ep.self() != 1) {
      for (int i = 0; i < 3; ++i) ep.send(1, "m", text(std::to_string(i)));
    }
    Inbox in = ep.end_round();
    std::vector<std::pair<NodeId, uint64_t>> seen;
    for (const Message& m : in.messages()) seen.emplace_back(m.sender, m.seq);
    return seen;
  });
  std::vector<std::pair<NodeId, uint64_t>> expect;
  for (NodeId s = 2; s <= 4; ++s) {
    for (uint64_t q = 0; q < 3; ++q) expect.emplace_back(s, q);
  }
  EXPECT_EQ(*out[0].value, expect);
}

TEST(SimNetwork, ForgedSenderIsRejected) {
  SimNetwork net;
  auto out = run_session<bool>(net, "forge", ids(3), [&](Endpoint& ep) {
    if (ep.self() == 3) net.inject_forged("forge", 3, 2, 1, "m", text("evil"));
    Inbox in = ep.end_round();
    return in.get(2, "m") == nullptr;
  });
  EXPECT_TRUE(*out[0].value);
  EXPECT_EQ(net.forged_rejected(), 1u);
}

TEST(SimNetwork, DropAndPartition) {
  SimNetwork net(SimNetwork::Options{std::chrono::milliseconds(200)});
  net.set_drop_filter([](const std::string&, NodeId from, NodeId to, const Message&) {
    return from == 2 && to == 1;
  });
  auto out = run_session<std::pair<bool, bool>>(net, "drop", ids(3), [](Endpoint& ep) {
    ep.send_all(ep.members(), "m", text("x"));
    Inbox in = ep.end_round();
    return std::make_pair(in.get(2, "m") != nullptr, in.get(3, "m") != nullptr);
  });
  EXPECT_EQ(*out[0].value, std::make_pair(false, true));
  EXPECT_EQ(*out[2].value, std::make_pair(true, false));

  net.set_drop_filter({});
  net.partition(3);
  auto start = std::chrono::steady_clock::now();
  auto cut = run_session<std::set<NodeId>>(net, "cut", ids(3), [](Endpoint& ep) {
    ep.send_all(ep.members(), "m", text("x"));
    Inbox in = ep.end_round();
    EXPECT_EQ(in.get(3, "m"), nullptr);
    return in.timed_out();
  });
  EXPECT_GE(std::chrono::steady_clock::now() - start, std::chrono::milliseconds(200));
  EXPECT_EQ(*cut[0].value, std::set<NodeId>{3});
  net.heal(3);
}

TEST(SimNetwork, LeavingMemberReleasesBarrier) {
  SimNetwork net;
  auto out = run_session<int>(net, "leave", ids(3), [](Endpoint& ep) {
    if (ep.self() == 2) {
      ep.leave();
      return 0;
    }
    for (int r = 0; r < 3; ++r) {
      ep.send_all(ep.members(), "m", text("x"));
      EXPECT_TRUE(ep.end_round().timed_out().empty());
    }
    return 3;
  });
  EXPECT_EQ(*out[0].value, 3);
  EXPECT_EQ(*out[2].value, 3);
}

TEST(SimNetwork, MembershipMustMatch) {
  SimNetwork net;
  auto a = net.open("m", 1, {1, 2});
  EXPECT_THROW(net.open("m", 2, {1, 2, 3}), Error);
  EXPECT_THROW(net.open("m2", 4, {1, 2}), Error);
  EXPECT_THROW(a->send(9, "x", {}), Error);
}

TEST(Board, OrderingVisibilityAndAnonymity) {
  int64_t now = 1000;
  InMemoryBoard board(false, [&] { return now; });
  board.post(text("a"), 7);
  EXPECT_TRUE(board.read(0).empty());  // not visible until the round closes
  board.advance_round();
  now = 2000;
  board.post(text("b"), std::nullopt);
  auto v = board.read(0);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].sender, 7u);
  EXPECT_EQ(v[0].time_ms, 1000);
  board.advance_round();
  v = board.read(1);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_TRUE(v[0].anonymous);
  EXPECT_EQ(v[0].sender, 0u);
  EXPECT_EQ(v[0].seq, 1u);
  EXPECT_EQ(decode_entry(encode_entry(v[0])), v[0]);
}

TEST(Board, AutoAdvanceAndWait) {
  InMemoryBoard board;
  std::thread poster([&] {
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    board.post(text("late"), 1);
  });
  auto v = board.wait(0, std::chrono::milliseconds(2000));
  poster.join();
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].payload, text("late"));
  EXPECT_TRUE(board.wait(1, std::chrono::milliseconds(10)).empty());
}

TEST(AnonChannel, ShufflesAndStripsSender) {
  InMemoryBoard board;
  AnonChannel chan(board, 42);
  std::vector<Bytes> sent;
  for (int i = 0; i < 16; ++i) {
    sent.push_back(text("msg" + std::to_string(i)));
    chan.send(sent.back());
  }
  EXPECT_EQ(chan.pending(), 16u);
  EXPECT_EQ(chan.flush(), 16u);
  EXPECT_EQ(chan.pending(), 0u);
  auto v = board.read(0);
  ASSERT_EQ(v.size(), 16u);
  std::vector<Bytes> got;
  for (const auto& e : v) {
    EXPECT_TRUE(e.anonymous);
    got.push_back(e.payload);
  }
  EXPECT_NE(got, sent);
  std::sort(got.begin(), got.end());
  std::sort(sent.begin(), sent.end());
  EXPECT_EQ(got, sent);
}

}  // namespace
}  // namespace sae::transport
