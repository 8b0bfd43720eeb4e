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

#ifndef SAE_TRANSPORT_BOARD_HPP_
#define SAE_TRANSPORT_BOARD_HPP_

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <vector>

#include "sae/algebra/bytes.hpp"
#include "sae/algebra/rng.hpp"
#include "sae/transport/network.hpp"

namespace sae::transport {

struct BoardEntry {
  uint64_t seq = 0;
  uint64_t round = 0;
  bool anonymous = false;
  NodeId sender = 0;  // 0 when anonymous
  int64_t time_ms = 0;
  Bytes payload;

  bool operator==(const BoardEntry&) const = default;
};

Bytes encode_entry(const BoardEntry& e);
BoardEntry decode_entry(ByteView b);

// Append-only, totally ordered log visible to every reader. An entry posted
// in board round r becomes readable once the board has moved past r.
class BulletinBoard {
 public:
  virtual ~BulletinBoard() = default;

  // sender == nullopt marks an anonymous post.
  virtual uint64_t post(Bytes payload, std::optional<NodeId> sender) = 0;
  // Visible entries with seq >= since.
  virtual std::vector<BoardEntry> read(uint64_t since) = 0;
  // Like read() but blocks up to `timeout` for at least one entry.
  virtual std::vector<BoardEntry> wait(uint64_t since, std::chrono::milliseconds timeout) = 0;
};

class InMemoryBoard : public BulletinBoard {
 public:
  using Clock = std::function<int64_t()>;

  // With auto_advance the board closes its current round whenever someone
  // reads, so a post is visible to the next reader. Without it, rounds only
  // move on advance_round().
  explicit InMemoryBoard(bool auto_advance = true, Clock clock = {});

  uint64_t post(Bytes payload, std::optional<NodeId> sender) override;
  std::vector<BoardEntry> read(uint64_t since) override;
  std::vector<BoardEntry> wait(uint64_t since, std::chrono::milliseconds timeout) override;

  void advance_round();
  uint64_t current_round() const;
  size_t size() const;

 private:
  std::vector<BoardEntry> visible_locked(uint64_t since);

  bool auto_advance_;
  Clock clock_;
  mutable std::mutex mu_;
  std::condition_variable cv_;
  uint64_t round_ = 0;
  std::vector<BoardEntry> entries_;
};

// Idealized anonymous channel: a mix that batches submissions, shuffles each
// batch and posts it to the board with no sender attached.
class AnonChannel {
 public:
  AnonChannel(BulletinBoard& board, uint64_t shuffle_seed);

  void send(Bytes payload);
  // Posts the pending batch; returns the number of entries posted.
  size_t flush();
  size_t pending() const;

 private:
  BulletinBoard& board_;
  mutable std::mutex mu_;
  Rng rng_;
  std::vector<Bytes> batch_;
};

}  // namespace sae::transport

#endif  // SAE_TRANSPORT_BOARD_HPP_
