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

#ifndef SAE_TRANSPORT_NETWORK_HPP_
#define SAE_TRANSPORT_NETWORK_HPP_

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sae/algebra/bytes.hpp"

namespace sae::transport {

// Escrows use ids 1..n (equal to their share index); clients use ids at or
// above kFirstClientId.
using NodeId = uint32_t;
inline constexpr NodeId kFirstClientId = 1000;

struct Message {
  NodeId sender = 0;
  uint32_t round = 0;
  uint64_t seq = 0;  // per-sender, per-session send counter
  std::string type;
  Bytes body;
};

// Messages delivered to one party at the close of one round, ordered by
// (sender, seq). Absence of a message is the protocol-level bottom value.
class Inbox {
 public:
  Inbox() = default;
  Inbox(std::vector<Message> msgs, std::set<NodeId> timed_out);

  // First message of `type` from `sender`, or nullptr.
  const Message* get(NodeId sender, std::string_view type) const;
  std::vector<const Message*> all(std::string_view type) const;
  const std::vector<Message>& messages() const { return msgs_; }
  // Members that never reached the round barrier before the deadline.
  const std::set<NodeId>& timed_out() const { return timed_out_; }

 private:
  std::vector<Message> msgs_;
  std::set<NodeId> timed_out_;
};

// One party's handle on one session. A message sent during round r is
// delivered in the Inbox returned by the r-th end_round() call. Not
// thread-safe; one session is driven by one thread per party.
class Endpoint {
 public:
  virtual ~Endpoint() = default;

  virtual NodeId self() const = 0;
  virtual const std::string& session() const = 0;
  virtual const std::vector<NodeId>& members() const = 0;
  virtual uint32_t round() const = 0;

  virtual void send(NodeId to, std::string_view type, Bytes body) = 0;
  // Blocks until every live member closes the round or the round deadline
  // passes; members that miss the deadline are listed in timed_out().
  virtual Inbox end_round() = 0;
  // Removes this party from future barriers. Idempotent.
  virtual void leave() = 0;

  // Same payload to each listed node other than self.
  void send_all(const std::vector<NodeId>& to, std::string_view type, const Bytes& body);
};

class Network {
 public:
  virtual ~Network() = default;
  // `members` must include `self` and be identical at every member.
  virtual std::unique_ptr<Endpoint> open(const std::string& session, NodeId self,
                                         std::vector<NodeId> members) = 0;
};

}  // namespace sae::transport

#endif  // SAE_TRANSPORT_NETWORK_HPP_
