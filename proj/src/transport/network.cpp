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

#include "sae/transport/network.hpp"

#include <algorithm>

namespace sae::transport {

Inbox::Inbox(std::vector<Message> msgs, std::set<NodeId> timed_out)
    : msgs_(std::move(msgs)), timed_out_(std::move(timed_out)) {
  std::stable_sort(msgs_.begin(), msgs_.end(), [](const Message& a, const Message& b) {
    return a.sender != b.sender ? a.sender < b.sender : a.seq < b.seq;
  });
}

const Message* Inbox::get(NodeId sender, std::string_view type) const {
  for (const Message& m : msgs_) {
    if (m.sender == sender && m.type == type) return &m;
  }
  return nullptr;
}

std::vector<const Message*> Inbox::all(std::string_view type) const {
  std::vector<const Message*> out;
  for (const Message& m : msgs_) {
    if (m.type == type) out.push_back(&m);
  }
  return out;
}

void Endpoint::send_all(const std::vector<NodeId>& to, std::string_view type, const Bytes& body) {
  for (NodeId n : to) {
    if (n != self()) send(n, type, body);
  }
}

}  // namespace sae::transport
