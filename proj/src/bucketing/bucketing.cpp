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

#include "sae/bucketing/bucketing.hpp"

#include <algorithm>
#include <numeric>

#include "sae/errors.hpp"

namespace sae::bucketing {

namespace {

constexpr uint8_t kEncodingVersion = 1;
constexpr size_t kMaxField = 1 << 16;

std::string show(const AllegationId& id) {
  std::string h = to_hex(id);
  return h.size() > 16 ? h.substr(0, 16) : h;
}

class UnionFind {
 public:
  explicit UnionFind(size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  size_t find(size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  // The smaller root wins so the result is independent of merge order.
  void unite(size_t a, size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<size_t> parent_;
};

}  // namespace

bool BucketMap::has(const AllegationId& id, uint32_t bucket) const { return tag(id, bucket) != nullptr; }

const MatchTag* BucketMap::tag(const AllegationId& id, uint32_t bucket) const {
  auto b = buckets.find(bucket);
  if (b == buckets.end()) return nullptr;
  auto e = b->second.find(id);
  return e == b->second.end() ? nullptr : &e->second;
}

Bytes BucketMap::encode() const {
  ByteWriter w;
  w.u8(kEncodingVersion);
  w.u32(static_cast<uint32_t>(thresholds.size()));
  for (const auto& [id, t] : thresholds) w.bytes(id).u32(t);
  uint32_t nonempty = 0;
  for (const auto& [i, entries] : buckets) nonempty += entries.empty() ? 0 : 1;
  w.u32(nonempty);
  for (const auto& [i, entries] : buckets) {
    if (entries.empty()) continue;
    w.u32(i).u32(static_cast<uint32_t>(entries.size()));
    for (const auto& [id, tag] : entries) w.bytes(id).bytes(tag);
  }
  return w.take();
}

BucketMap BucketMap::decode(ByteView b) {
  ByteReader r(b);
  if (r.u8() != kEncodingVersion) throw Error(Errc::kDecode, "unknown bucket map version");
  BucketMap m;
  uint32_t nt = r.u32();
  for (uint32_t k = 0; k < nt; ++k) {
    Bytes id = r.bytes(kMaxField);
    uint32_t t = r.u32();
    if (!m.thresholds.emplace(std::move(id), t).second) throw Error(Errc::kDecode, "duplicate threshold");
  }
  uint32_t nb = r.u32();
  for (uint32_t k = 0; k < nb; ++k) {
    uint32_t i = r.u32();
    uint32_t ne = r.u32();
    auto& entries = m.buckets[i];
    for (uint32_t e = 0; e < ne; ++e) {
      Bytes id = r.bytes(kMaxField);
      Bytes tag = r.bytes(kMaxField);
      if (!entries.emplace(std::move(id), std::move(tag)).second) throw Error(Errc::kDecode, "duplicate entry");
    }
  }
  r.expect_done();
  return m;
}

std::vector<Collection> collections(const BucketMap& m) {
  std::map<AllegationId, size_t> index;
  std::vector<const AllegationId*> ids;
  for (const auto& [i, entries] : m.buckets) {
    for (const auto& [id, tag] : entries) {
      if (index.emplace(id, 0).second) ids.push_back(nullptr);
    }
  }
  size_t k = 0;
  for (auto& [id, slot] : index) {
    slot = k;
    ids[k++] = &id;
  }
  UnionFind uf(ids.size());
  for (const auto& [i, entries] : m.buckets) {
    std::map<MatchTag, size_t> first;
    for (const auto& [id, tag] : entries) {
      auto [it, fresh] = first.emplace(tag, index.at(id));
      if (!fresh) uf.unite(it->second, index.at(id));
    }
  }
  std::map<size_t, Collection> by_root;
  for (size_t x = 0; x < ids.size(); ++x) by_root[uf.find(x)].members.insert(*ids[x]);
  for (const auto& [i, entries] : m.buckets) {
    for (const auto& [id, tag] : entries) {
      Collection& c = by_root[uf.find(index.at(id))];
      c.occupied.insert(i);
      if (i == 0) c.revealed = true;
    }
  }
  std::vector<Collection> out;
  for (auto& [root, c] : by_root) out.push_back(std::move(c));
  return out;
}

namespace {

uint32_t threshold_of(const BucketMap& m, const AllegationId& id) {
  auto it = m.thresholds.find(id);
  if (it == m.thresholds.end()) {
    throw Error(Errc::kInvariantViolation, "bucket entry " + show(id) + " has no threshold");
  }
  return it->second;
}

void check_collection(const BucketMap& m, const Collection& c) {
  if (c.max() - c.min() + 1 != c.occupied.size()) {
    throw Error(Errc::kInvariantViolation, "collection of " + show(*c.members.begin()) + " is not contiguous");
  }
  if (c.revealed) return;
  if (c.occupied.size() > c.size()) {
    throw Error(Errc::kInvariantViolation, "collection of " + show(*c.members.begin()) + " spans " +
                                               std::to_string(c.occupied.size()) + " buckets with " +
                                               std::to_string(c.size()) + " members");
  }
  for (const AllegationId& id : c.members) {
    uint32_t t = threshold_of(m, id);
    if (t == 0 || !m.has(id, t - 1)) {
      throw Error(Errc::kInvariantViolation, show(id) + " is missing from its entry bucket");
    }
    if (t > c.size() + c.min()) {
      throw Error(Errc::kInvariantViolation, show(id) + " sits below its threshold");
    }
  }
}

}  // namespace

void check_invariants(const BucketMap& m) {
  for (const Collection& c : collections(m)) check_collection(m, c);
}

void file_allegation(BucketMap& m, const AllegationId& id, uint32_t t, const MatchTag& tag) {
  if (t == 0) throw Error(Errc::kInvalidConfig, "threshold must be at least 1");
  if (m.thresholds.count(id)) throw Error(Errc::kDuplicateEntry, "allegation " + show(id) + " already filed");
  m.thresholds.emplace(id, t);
  m.buckets[t - 1].emplace(id, tag);
}

std::optional<Task> bucketing(const BucketMap& m) {
  std::vector<Collection> cs = collections(m);
  for (const Collection& c : cs) check_collection(m, c);

  // Fill: every member of a collection sits in every bucket it occupies.
  for (const Collection& c : cs) {
    for (uint32_t i : c.occupied) {
      for (const AllegationId& id : c.members) {
        if (!m.has(id, i)) return Task{id, i, TaskKind::kFill};
      }
    }
  }

  // Copy-down: all thresholds < Min + |A|.
  const Collection* pick = nullptr;
  for (const Collection& c : cs) {
    if (c.revealed) continue;
    uint32_t max_t = 0;
    for (const AllegationId& id : c.members) max_t = std::max(max_t, threshold_of(m, id));
    if (max_t >= c.min() + c.size()) continue;
    // cs is ordered by smallest member, so strict < keeps the tie-break.
    if (pick == nullptr || c.min() < pick->min()) pick = &c;
  }
  if (pick != nullptr) return Task{*pick->members.begin(), pick->min() - 1, TaskKind::kCopyDown};

  // Maintain: a revealed collection is present in buckets 1..|A|.
  for (const Collection& c : cs) {
    if (!c.revealed) continue;
    for (uint32_t i = 1; i <= c.size(); ++i) {
      if (!c.occupied.count(i)) return Task{*c.members.begin(), i, TaskKind::kMaintain};
    }
  }
  return std::nullopt;
}

void apply_task_in_place(BucketMap& m, const Task& task, const MatchTag& tag) {
  if (!m.thresholds.count(task.id)) throw Error(Errc::kInvalidConfig, "task for unknown allegation " + show(task.id));
  if (!m.buckets[task.i].emplace(task.id, tag).second) {
    throw Error(Errc::kDuplicateEntry, show(task.id) + " already in bucket " + std::to_string(task.i));
  }
}

BucketMap apply_task(const BucketMap& m, const Task& task, const MatchTag& tag) {
  BucketMap out = m;
  apply_task_in_place(out, task, tag);
  return out;
}

std::optional<AllegationId> tag_source(const BucketMap& m, const Task& task) {
  auto b = m.buckets.find(task.i);
  if (b == m.buckets.end() || b->second.empty()) return std::nullopt;
  for (const Collection& c : collections(m)) {
    if (!c.members.count(task.id)) continue;
    for (const AllegationId& id : c.members) {
      if (id != task.id && b->second.count(id)) return id;
    }
  }
  return std::nullopt;
}

std::set<AllegationId> revealed_set(const BucketMap& m) {
  std::set<AllegationId> out;
  auto b = m.buckets.find(0);
  if (b == m.buckets.end()) return out;
  for (const auto& [id, tag] : b->second) out.insert(id);
  return out;
}

std::set<AllegationId> oracle_reveal_predicate(const std::vector<OracleFiling>& filings) {
  std::map<std::string, std::vector<const OracleFiling*>> classes;
  for (const OracleFiling& f : filings) classes[f.meta].push_back(&f);
  std::set<AllegationId> out;
  for (const auto& [meta, members] : classes) {
    std::vector<const OracleFiling*> s = members;
    for (;;) {
      std::vector<const OracleFiling*> next;
      for (const OracleFiling* f : s) {
        if (f->t <= s.size()) next.push_back(f);
      }
      if (next.size() == s.size()) break;
      s = std::move(next);
    }
    for (const OracleFiling* f : s) out.insert(f->id);
  }
  return out;
}

}  // namespace sae::bucketing
