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

#ifndef SAE_TESTS_COMMON_RUNNER_HPP_
#define SAE_TESTS_COMMON_RUNNER_HPP_

#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "sae/transport/network.hpp"

namespace sae::testing {

// Result of one party's run: a value or the exception it threw.
template <typename T>
struct PartyResult {
  std::optional<T> value;
  std::exception_ptr error;

  bool ok() const { return value.has_value(); }
};

// Runs fn(endpoint) for every member on its own thread and joins them all.
// Results are indexed like `members`.
template <typename T, typename Fn>
std::vector<PartyResult<T>> run_session(transport::Network& net, const std::string& session,
                                        const std::vector<transport::NodeId>& members, Fn fn) {
  std::vector<PartyResult<T>> out(members.size());
  std::vector<std::thread> threads;
  for (size_t i = 0; i < members.size(); ++i) {
    threads.emplace_back([&, i] {
      try {
        auto ep = net.open(session, members[i], members);
        out[i].value = fn(*ep);
        ep->leave();
      } catch (...) {
        out[i].error = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  return out;
}

inline std::vector<transport::NodeId> ids(uint32_t n) {
  std::vector<transport::NodeId> v;
  for (transport::NodeId j = 1; j <= n; ++j) v.push_back(j);
  return v;
}

}  // namespace sae::testing

#endif  // SAE_TESTS_COMMON_RUNNER_HPP_
