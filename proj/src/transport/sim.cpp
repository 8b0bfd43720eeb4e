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

#include "sae/transport/sim.hpp"

#include <algorithm>
#include <condition_variable>
#include <thread>

#include "sae/errors.hpp"

namespace sae::transport {

struct SimNetwork::Session {
  struct Envelope {
    NodeId origin;
    NodeId to;
    Message msg;
  };

  std::mutex mu;
  std::condition_variable cv;
  std::vector<NodeId> members;
  std::set<NodeId> left;
  uint32_t round = 0;
  std::set<NodeId> arrived;
  std::vector<Envelope> pending;
  std::map<std::pair<NodeId, uint32_t>, std::vector<Message>> delivered;
  std::map<uint32_t, std::set<NodeId>> timed_out;
};

class SimEndpoint : public Endpoint {
 public:
  SimEndpoint(SimNetwork* net, std::shared_ptr<SimNetwork::Session> s, std::string id, NodeId self)
      : net_(net), s_(std::move(s)), id_(std::move(id)), self_(self) {}
  ~SimEndpoint() override { leave(); }

  NodeId self() const override { return self_; }
  const std::string& session() const override { return id_; }
  const std::vector<NodeId>& members() const override { return s_->members; }
  uint32_t round() const override { return round_; }

  void send(NodeId to, std::string_view type, Bytes body) override {
    Message msg{self_, round_, seq_++, std::string(type), std::move(body)};
    deliver(self_, to, std::move(msg));
  }

  void deliver(NodeId origin, NodeId to, Message msg) {
    if (left_) return;
    if (std::find(s_->members.begin(), s_->members.end(), to) == s_->members.end()) {
      throw Error(Errc::kInvalidConfig, "send to non-member " + std::to_string(to));
    }
    SimNetwork::DropFilter drop;
    SimNetwork::DelayFn delay;
    {
      std::lock_guard<std::mutex> lock(net_->mu_);
      drop = net_->drop_;
      delay = net_->delay_;
      if (net_->partitioned_.count(origin) || net_->partitioned_.count(to)) return;
    }
    net_->messages_++;
    net_->bytes_ += msg.body.size() + msg.type.size();
    if (drop && drop(id_, origin, to, msg)) return;
    if (delay) {
      auto d = delay(origin, to);
      if (d.count() > 0) std::this_thread::sleep_for(d);
    }
    std::lock_guard<std::mutex> lock(s_->mu);
    // Sent after the round closed: the recipient already saw bottom.
    if (msg.round != s_->round) return;
    s_->pending.push_back({origin, to, std::move(msg)});
  }

  Inbox end_round() override {
    if (left_) throw Error(Errc::kInvalidConfig, "end_round after leave");
    uint32_t r = round_++;
    bool cut_off = net_->partitioned(self_);
    std::unique_lock<std::mutex> lock(s_->mu);
    if (s_->round == r) {
      if (!cut_off) s_->arrived.insert(self_);
      if (all_arrived_locked()) {
        complete_locked();
      } else {
        auto deadline = std::chrono::steady_clock::now() + net_->opts_.round_timeout;
        while (s_->round == r) {
          if (s_->cv.wait_until(lock, deadline) == std::cv_status::timeout && s_->round == r) {
            complete_locked();
          }
        }
      }
    }
    auto key = std::make_pair(self_, r);
    std::vector<Message> msgs;
    if (auto it = s_->delivered.find(key); it != s_->delivered.end()) {
      msgs = std::move(it->second);
      s_->delivered.erase(it);
    }
    std::set<NodeId> late = s_->timed_out[r];
    return Inbox(std::move(msgs), std::move(late));
  }

  void leave() override {
    if (left_) return;
    left_ = true;
    {
      std::lock_guard<std::mutex> lock(s_->mu);
      s_->left.insert(self_);
      s_->arrived.erase(self_);
      if (s_->left.size() < s_->members.size() && !s_->arrived.empty() && all_arrived_locked()) {
        complete_locked();
      }
    }
    net_->release(id_);
  }

 private:
  bool all_arrived_locked() const {
    for (NodeId m : s_->members) {
      if (!s_->left.count(m) && !s_->arrived.count(m)) return false;
    }
    return true;
  }

  void complete_locked() {
    auto& missing = s_->timed_out[s_->round];
    for (NodeId m : s_->members) {
      if (!s_->left.count(m) && !s_->arrived.count(m)) missing.insert(m);
    }
    for (auto& env : s_->pending) {
      if (env.origin != env.msg.sender) {
        net_->forged_++;
        continue;
      }
      s_->delivered[{env.to, s_->round}].push_back(std::move(env.msg));
    }
    s_->pending.clear();
    s_->arrived.clear();
    s_->round++;
    s_->cv.notify_all();
  }

  friend class SimNetwork;

  SimNetwork* net_;
  std::shared_ptr<SimNetwork::Session> s_;
  std::string id_;
  NodeId self_;
  uint32_t round_ = 0;
  uint64_t seq_ = 0;
  bool left_ = false;
};

SimNetwork::SimNetwork() : SimNetwork(Options{}) {}
SimNetwork::SimNetwork(Options opts) : opts_(opts) {}
SimNetwork::~SimNetwork() = default;

std::shared_ptr<SimNetwork::Session> SimNetwork::session(const std::string& id,
                                                         const std::vector<NodeId>& members) {
  std::lock_guard<std::mutex> lock(mu_);
  auto& s = sessions_[id];
  if (!s) {
    s = std::make_shared<Session>();
    s->members = members;
  } else if (s->members != members) {
    throw Error(Errc::kInvalidConfig, "session " + id + " opened with diverging member lists");
  }
  return s;
}

void SimNetwork::release(const std::string& id) {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return;
  std::lock_guard<std::mutex> slock(it->second->mu);
  if (it->second->left.size() == it->second->members.size()) sessions_.erase(it);
}

std::unique_ptr<Endpoint> SimNetwork::open(const std::string& session_id, NodeId self,
                                           std::vector<NodeId> members) {
  std::sort(members.begin(), members.end());
  if (std::find(members.begin(), members.end(), self) == members.end()) {
    throw Error(Errc::kInvalidConfig, "self not among session members");
  }
  auto s = session(session_id, members);
  return std::make_unique<SimEndpoint>(this, std::move(s), session_id, self);
}

void SimNetwork::set_drop_filter(DropFilter f) {
  std::lock_guard<std::mutex> lock(mu_);
  drop_ = std::move(f);
}

void SimNetwork::set_delay(DelayFn f) {
  std::lock_guard<std::mutex> lock(mu_);
  delay_ = std::move(f);
}

void SimNetwork::partition(NodeId node) {
  std::lock_guard<std::mutex> lock(mu_);
  partitioned_.insert(node);
}

void SimNetwork::heal(NodeId node) {
  std::lock_guard<std::mutex> lock(mu_);
  partitioned_.erase(node);
}

bool SimNetwork::partitioned(NodeId n) {
  std::lock_guard<std::mutex> lock(mu_);
  return partitioned_.count(n) != 0;
}

void SimNetwork::inject_forged(const std::string& session_id, NodeId origin, NodeId claimed,
                               NodeId to, std::string_view type, Bytes body) {
  std::shared_ptr<Session> s;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = sessions_.find(session_id);
    if (it == sessions_.end()) throw Error(Errc::kInvalidConfig, "no such session");
    s = it->second;
  }
  std::lock_guard<std::mutex> lock(s->mu);
  Message msg{claimed, s->round, 0, std::string(type), std::move(body)};
  s->pending.push_back({origin, to, std::move(msg)});
}

}  // namespace sae::transport
