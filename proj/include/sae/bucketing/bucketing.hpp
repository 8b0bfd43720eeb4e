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

#ifndef SAE_BUCKETING_BUCKETING_HPP_
#define SAE_BUCKETING_BUCKETING_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sae/algebra/bytes.hpp"

namespace sae::bucketing {

// Opaque, totally ordered identifiers. In the live system the id is the
// filing public key and the tag a serialized per-bucket VRF value.
using AllegationId = Bytes;
using MatchTag = Bytes;

// Bucket i holds allegations waiting for at most i more matches; bucket 0 is
// the revealed set. Tags are only comparable within one bucket.
struct BucketMap {
  std::map<AllegationId, uint32_t> thresholds;
  std::map<uint32_t, std::map<AllegationId, MatchTag>> buckets;

  bool has(const AllegationId& id, uint32_t bucket) const;
  const MatchTag* tag(const AllegationId& id, uint32_t bucket) const;

  // Canonical: equal maps encode to equal bytes.
  Bytes encode() const;
  static BucketMap decode(ByteView b);

  bool operator==(const BucketMap&) const = default;
};

// Allegations linked, directly or transitively, by equal tags in a common
// bucket.
struct Collection {
  std::set<AllegationId> members;
  std::set<uint32_t> occupied;
  bool revealed = false;

  uint32_t min() const { return *occupied.begin(); }
  uint32_t max() const { return *occupied.rbegin(); }
  uint32_t size() const { return static_cast<uint32_t>(members.size()); }
};

enum class TaskKind : uint8_t {
  kFill,      // a member catches up with a bucket its collection already occupies
  kCopyDown,  // the collection is copied to Min - 1
  kMaintain,  // a revealed collection extends its presence to buckets 1..|A|
};

// Move allegation `id` into bucket `i`.
struct Task {
  AllegationId id;
  uint32_t i = 0;
  TaskKind kind = TaskKind::kCopyDown;

  bool operator==(const Task&) const = default;
};

// Ordered by their smallest member.
std::vector<Collection> collections(const BucketMap& m);

// Throws kInvariantViolation. Holds at every step of a correct run:
// each collection occupies a contiguous range; unrevealed ones occupy at most
// |A| buckets, contain each member's entry bucket t-1, and every member has
// t <= |A| + Min.
void check_invariants(const BucketMap& m);

// Places a new allegation in bucket t-1 with `tag`. Throws kDuplicateEntry
// on a known id and kInvalidConfig when t = 0.
void file_allegation(BucketMap& m, const AllegationId& id, uint32_t t, const MatchTag& tag);

// Next task under the fixed order fill, copy-down (lowest Min first, ties by
// smallest member), maintain; nullopt once saturated. Stateless.
std::optional<Task> bucketing(const BucketMap& m);

// Throws kDuplicateEntry if (id, i) is already present.
BucketMap apply_task(const BucketMap& m, const Task& task, const MatchTag& tag);
void apply_task_in_place(BucketMap& m, const Task& task, const MatchTag& tag);

// A collection co-member already present in task.i, whose tag is by
// construction the one task.id would get; nullopt if a fresh tag is needed.
std::optional<AllegationId> tag_source(const BucketMap& m, const Task& task);

std::set<AllegationId> revealed_set(const BucketMap& m);

// Runs tasks until saturation. `fresh(task)` must return the tag of task.id
// in bucket task.i and is only called when no co-member can supply it.
// Returns the number of fresh tags requested.
template <typename FreshTag>
size_t saturate(BucketMap& m, FreshTag&& fresh) {
  size_t count = 0;
  while (auto task = bucketing(m)) {
    MatchTag tag;
    if (auto src = tag_source(m, *task)) {
      tag = *m.tag(*src, task->i);
    } else {
      tag = fresh(*task);
      ++count;
    }
    apply_task_in_place(m, *task, tag);
  }
  return count;
}

// Brute-force reference: within each meta class, the largest subset S where
// every threshold is at most |S|.
struct OracleFiling {
  AllegationId id;
  std::string meta;
  uint32_t t;
};
std::set<AllegationId> oracle_reveal_predicate(const std::vector<OracleFiling>& filings);

}  // namespace sae::bucketing

#endif  // SAE_BUCKETING_BUCKETING_HPP_
