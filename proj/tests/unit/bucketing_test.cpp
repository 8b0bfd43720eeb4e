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

#include "sae/algebra/hash.hpp"
#include "sae/algebra/rng.hpp"
#include "sae/bucketing/bucketing.hpp"
#include "sae/errors.hpp"

namespace sae::bucketing {
namespace {

AllegationId id(int k) { return Bytes{static_cast<uint8_t>(k)}; }

// Bucket-keyed stand-in for a PRF: equal meta collides only within a bucket.
MatchTag prf(uint32_t bucket, const std::string& meta) {
  ByteWriter w;
  w.u32(bucket).str(meta);
  auto d = sha256(w.view());
  return Bytes(d.begin(), d.end());
}

struct Sim {
  BucketMap m;
  std::map<AllegationId, std::string> meta;
  std::vector<OracleFiling> filed;
  size_t fresh = 0;

  void file(const AllegationId& a, const std::string& mt, uint32_t t) {
    meta[a] = mt;
    filed.push_back({a, mt, t});
    file_allegation(m, a, t, prf(t - 1, mt));
    ++fresh;
    fresh += saturate(m, [&](const Task& task) { return prf(task.i, meta.at(task.id)); });
  }
};

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::kIo;
}

TEST(Bucketing, SingleAllegationRestsInEntryBucket) {
  BucketMap m;
  file_allegation(m, id(1), 2, prf(1, "x"));
  EXPECT_FALSE(bucketing(m));
  EXPECT_TRUE(revealed_set(m).empty());
  EXPECT_TRUE(revealed_set(BucketMap{}).empty());
}

TEST(Bucketing, TwoMatchingThresholdTwo) {
  BucketMap m;
  file_allegation(m, id(1), 2, prf(1, "x"));
  file_allegation(m, id(2), 2, prf(1, "x"));
  auto t = bucketing(m);
  ASSERT_TRUE(t);
  EXPECT_EQ(*t, (Task{id(1), 0, TaskKind::kCopyDown}));
  EXPECT_FALSE(tag_source(m, *t));
  m = apply_task(m, *t, prf(0, "x"));
  t = bucketing(m);
  ASSERT_TRUE(t);
  EXPECT_EQ(*t, (Task{id(2), 0, TaskKind::kFill}));
  EXPECT_EQ(tag_source(m, *t), id(1));
  apply_task_in_place(m, *t, prf(0, "x"));
  EXPECT_EQ(revealed_set(m), (std::set<AllegationId>{id(1), id(2)}));
  // Revealed pair is maintained in buckets 1..2.
  t = bucketing(m);
  ASSERT_TRUE(t);
  EXPECT_EQ(*t, (Task{id(1), 2, TaskKind::kMaintain}));
}

TEST(Bucketing, ApplyTaskSemantics) {
  BucketMap m;
  file_allegation(m, id(1), 3, prf(2, "x"));
  BucketMap moved = apply_task(m, Task{id(1), 5, TaskKind::kCopyDown}, prf(5, "x"));
  EXPECT_EQ(collections(moved)[0].occupied, (std::set<uint32_t>{2, 5}));
  EXPECT_TRUE(m.has(id(1), 2));
  EXPECT_FALSE(m.has(id(1), 5));
  EXPECT_EQ(code_of([&] { apply_task(moved, Task{id(1), 5}, prf(5, "x")); }), Errc::kDuplicateEntry);
  EXPECT_EQ(code_of([&] { file_allegation(m, id(1), 2, prf(1, "x")); }), Errc::kDuplicateEntry);
  EXPECT_EQ(code_of([&] { file_allegation(m, id(2), 0, prf(0, "x")); }), Errc::kInvalidConfig);
  // Non-contiguous occupancy is a caller bug.
  EXPECT_EQ(code_of([&] { bucketing(moved); }), Errc::kInvariantViolation);
}

TEST(Bucketing, MoveIntoMatchingBucketCoalesces) {
  BucketMap m;
  file_allegation(m, id(1), 4, prf(3, "x"));
  file_allegation(m, id(2), 3, prf(2, "x"));
  EXPECT_EQ(collections(m).size(), 2u);
  apply_task_in_place(m, Task{id(1), 2}, prf(2, "x"));
  auto cs = collections(m);
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(cs[0].members.size(), 2u);
  EXPECT_EQ(cs[0].occupied, (std::set<uint32_t>{2, 3}));
}

TEST(Bucketing, ThresholdOneRevealsImmediately) {
  Sim s;
  s.file(id(1), "x", 1);
  EXPECT_EQ(revealed_set(s.m), std::set<AllegationId>{id(1)});
  EXPECT_EQ(collections(s.m)[0].occupied, (std::set<uint32_t>{0, 1}));
}

TEST(Bucketing, WorkedExampleTwoThreeFiveThenThree) {
  Sim s;
  s.file(id(1), "x", 2);
  s.file(id(2), "x", 3);
  s.file(id(3), "x", 5);
  EXPECT_TRUE(revealed_set(s.m).empty());
  s.file(id(4), "x", 3);
  EXPECT_EQ(revealed_set(s.m), (std::set<AllegationId>{id(1), id(2), id(4)}));
  EXPECT_EQ(revealed_set(s.m), oracle_reveal_predicate(s.filed));
}

TEST(Bucketing, AllFoursNeedFour) {
  Sim s;
  for (int k = 1; k <= 3; ++k) s.file(id(k), "x", 4);
  EXPECT_TRUE(revealed_set(s.m).empty());
  s.file(id(4), "x", 4);
  EXPECT_EQ(revealed_set(s.m).size(), 4u);
}

TEST(Bucketing, Oracle) {
  auto run = [](std::vector<uint32_t> ts) {
    std::vector<OracleFiling> f;
    for (size_t k = 0; k < ts.size(); ++k) f.push_back({id(static_cast<int>(k)), "x", ts[k]});
    return oracle_reveal_predicate(f).size();
  };
  EXPECT_EQ(run({2, 3, 5}), 0u);
  EXPECT_EQ(run({2, 3, 5, 3}), 3u);
  EXPECT_EQ(run({4, 4, 4}), 0u);
  EXPECT_EQ(run({4, 4, 4, 4}), 4u);
  EXPECT_EQ(run({1}), 1u);
  std::vector<OracleFiling> mixed{{id(1), "a", 2}, {id(2), "b", 2}};
  EXPECT_TRUE(oracle_reveal_predicate(mixed).empty());
}

TEST(Bucketing, CanonicalEncoding) {
  Sim a, b;
  for (Sim* s : {&a, &b}) {
    s->file(id(1), "x", 2);
    s->file(id(2), "y", 3);
    s->file(id(3), "x", 2);
  }
  EXPECT_EQ(a.m.encode(), b.m.encode());
  EXPECT_EQ(BucketMap::decode(a.m.encode()), a.m);
  Bytes bad = a.m.encode();
  bad[0] = 9;
  EXPECT_THROW(BucketMap::decode(bad), Error);
}

// Randomized equivalence with the oracle plus the structural properties that
// must hold after every saturation.
TEST(Bucketing, RandomizedAgainstOracle) {
  Rng rng = Rng::from_u64(30);
  size_t total_fresh = 0, total_filed = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Sim s;
    int count = 1 + static_cast<int>(rng.uniform(12));
    uint32_t classes = 1 + static_cast<uint32_t>(rng.uniform(4));
    std::set<AllegationId> prev;
    for (int k = 0; k < count; ++k) {
      s.file(id(k), "meta" + std::to_string(rng.uniform(classes)), 1 + static_cast<uint32_t>(rng.uniform(10)));
      auto now = revealed_set(s.m);
      ASSERT_TRUE(std::includes(now.begin(), now.end(), prev.begin(), prev.end())) << "reveal shrank";
      prev = now;
      ASSERT_EQ(now, oracle_reveal_predicate(s.filed)) << "trial " << trial << " step " << k;
      for (const Collection& c : collections(s.m)) {
        if (c.revealed) {
          for (const auto& a : c.members) EXPECT_TRUE(now.count(a));
          for (uint32_t i = 0; i <= c.size(); ++i) EXPECT_TRUE(c.occupied.count(i));
        } else {
          EXPECT_EQ(c.occupied.size(), c.size());
          for (const auto& a : c.members) EXPECT_FALSE(now.count(a));
        }
      }
    }
    // Replaying yields an identical map.
    Sim again;
    for (const auto& f : s.filed) again.file(f.id, f.meta, f.t);
    EXPECT_EQ(again.m.encode(), s.m.encode());
    total_fresh += s.fresh;
    total_filed += s.filed.size();
  }
  EXPECT_LE(total_fresh, 2 * total_filed);
}

}  // namespace
}  // namespace sae::bucketing
