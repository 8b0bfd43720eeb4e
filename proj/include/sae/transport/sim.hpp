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

#ifndef SAE_TRANSPORT_SIM_HPP_
#define SAE_TRANSPORT_SIM_HPP_

#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>

#include "sae/transport/network.hpp"

namespace sae::transport {

// In-process round-synchronous network. Each session has its own barrier;
// parties are expected to run on separate threads. Delivery order inside an
// Inbox is canonical, so runs are reproducible irrespective of scheduling.
class SimNetwork : public Network {
 public:
  struct Options {
    std::chrono::milliseconds round_timeout{20000};
  };

  // Return true to drop the message.
  using DropFilter = std::function<bool(const std::string& session, NodeId from, NodeId to,
                                        const Message& msg)>;
  // Extra delay applied before a message enters the round mailbox.
  using DelayFn = std::function<std::chrono::microseconds(NodeId from, NodeId to)>;

  SimNetwork();
  explicit SimNetwork(Options opts);
  ~SimNetwork() override;

  std::unique_ptr<Endpoint> open(const std::string& session, NodeId self,
                                 std::vector<NodeId> members) override;

  void set_drop_filter(DropFilter f);
  void set_delay(DelayFn f);
  // A partitioned node neither sends, receives, nor counts toward barriers.
  void partition(NodeId node);
  void heal(NodeId node);
  // Delivers a message whose claimed sender differs from its true origin;
  // receivers discard it and bump forged_rejected().
  void inject_forged(const std::string& session, NodeId origin, NodeId claimed, NodeId to,
                     std::string_view type, Bytes body);

  uint64_t messages_sent() const { return messages_.load(); }
  uint64_t bytes_sent() const { return bytes_.load(); }
  uint64_t forged_rejected() const { return forged_.load(); }

 private:
  friend class SimEndpoint;
  struct Session;

  std::shared_ptr<Session> session(const std::string& id, const std::vector<NodeId>& members);
  void release(const std::string& id);
  bool partitioned(NodeId n);

  Options opts_;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::set<NodeId> partitioned_;
  DropFilter drop_;
  DelayFn delay_;
  std::atomic<uint64_t> messages_{0};
  std::atomic<uint64_t> bytes_{0};
  std::atomic<uint64_t> forged_{0};
};

}  // namespace sae::transport

#endif  // SAE_TRANSPORT_SIM_HPP_
