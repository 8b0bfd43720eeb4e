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

#include "sae/transport/board.hpp"

#include <algorithm>

namespace sae::transport {

Bytes encode_entry(const BoardEntry& e) {
  ByteWriter w;
  w.u64(e.seq).u64(e.round).u8(e.anonymous ? 1 : 0).u32(e.sender);
  w.u64(static_cast<uint64_t>(e.time_ms)).bytes(e.payload);
  return w.take();
}

BoardEntry decode_entry(ByteView b) {
  ByteReader r(b);
  BoardEntry e;
  e.seq = r.u64();
  e.round = r.u64();
  e.anonymous = r.u8() != 0;
  e.sender = r.u32();
  e.time_ms = static_cast<int64_t>(r.u64());
  e.payload = r.bytes();
  r.expect_done();
  return e;
}

InMemoryBoard::InMemoryBoard(bool auto_advance, Clock clock)
    : auto_advance_(auto_advance), clock_(std::move(clock)) {
  if (!clock_) {
    clock_ = [] {
      return std::chrono::duration_cast<std::chrono::milliseconds>(
                 std::chrono::system_clock::now().time_since_epoch())
          .count();
    };
  }
}

uint64_t InMemoryBoard::post(Bytes payload, std::optional<NodeId> sender) {
  std::lock_guard<std::mutex> lock(mu_);
  BoardEntry e;
  e.seq = entries_.size();
  e.round = round_;
  e.anonymous = !sender.has_value();
  e.sender = sender.value_or(0);
  e.time_ms = clock_();
  e.payload = std::move(payload);
  entries_.push_back(std::move(e));
  cv_.notify_all();
  return entries_.back().seq;
}

std::vector<BoardEntry> InMemoryBoard::visible_locked(uint64_t since) {
  if (auto_advance_ && !entries_.empty() && entries_.back().round == round_) ++round_;
  std::vector<BoardEntry> out;
  for (uint64_t i = since; i < entries_.size(); ++i) {
    if (entries_[i].round >= round_) break;
    out.push_back(entries_[i]);
  }
  return out;
}

std::vector<BoardEntry> InMemoryBoard::read(uint64_t since) {
  std::lock_guard<std::mutex> lock(mu_);
  return visible_locked(since);
}

std::vector<BoardEntry> InMemoryBoard::wait(uint64_t since, std::chrono::milliseconds timeout) {
  std::unique_lock<std::mutex> lock(mu_);
  auto deadline = std::chrono::steady_clock::now() + timeout;
  for (;;) {
    auto out = visible_locked(since);
    if (!out.empty()) return out;
    if (cv_.wait_until(lock, deadline) == std::cv_status::timeout) return visible_locked(since);
  }
}

void InMemoryBoard::advance_round() {
  std::lock_guard<std::mutex> lock(mu_);
  ++round_;
  cv_.notify_all();
}

uint64_t InMemoryBoard::current_round() const {
  std::lock_guard<std::mutex> lock(mu_);
  return round_;
}

size_t InMemoryBoard::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.size();
}

AnonChannel::AnonChannel(BulletinBoard& board, uint64_t shuffle_seed)
    : board_(board), rng_(Rng::from_u64(shuffle_seed)) {}

void AnonChannel::send(Bytes payload) {
  std::lock_guard<std::mutex> lock(mu_);
  batch_.push_back(std::move(payload));
}

size_t AnonChannel::flush() {
  std::vector<Bytes> batch;
  {
    std::lock_guard<std::mutex> lock(mu_);
    batch.swap(batch_);
    for (size_t i = batch.size(); i > 1; --i) std::swap(batch[i - 1], batch[rng_.uniform(i)]);
  }
  for (Bytes& b : batch) board_.post(std::move(b), std::nullopt);
  return batch.size();
}

size_t AnonChannel::pending() const {
  std::lock_guard<std::mutex> lock(mu_);
  return batch_.size();
}

}  // namespace sae::transport
