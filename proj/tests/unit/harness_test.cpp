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

#include <set>

#include "sae/client/client.hpp"
#include "sae/errors.hpp"
#include "sae/harness/fuzz.hpp"
#include "sae/harness/scenario.hpp"

namespace sae::harness {
namespace {

std::string scenario_path(const std::string& name) { return std::string(SAE_SCENARIO_DIR) + "/" + name; }

std::string steps_text(const ScenarioReport& r) { return r.text(); }

TEST(Scenario, Tokenizer) {
  EXPECT_EQ(tokenize(R"(file a "b c" text="x \"y\"" # tail)"),
            (std::vector<std::string>{"file", "a", "b c", "text=x \"y\""}));
  EXPECT_EQ(tokenize(R"(x "")"), (std::vector<std::string>{"x", ""}));
  EXPECT_TRUE(tokenize("   # only comment").empty());
  EXPECT_THROW(tokenize(R"(a "open)"), Error);
}

TEST(Scenario, ParseErrorsNameTheLine) {
  auto code_line = [](const std::string& text) -> std::string {
    try {
      parse_scenario(text);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::kDecode);
      return e.what();
    }
    return "parsed";
  };
  EXPECT_NE(code_line("register a 1\n").find("line 1"), std::string::npos);
  EXPECT_NE(code_line("sae-scenario v1\n\nfrobnicate\n").find("line 3"), std::string::npos);
  EXPECT_NE(code_line("sae-scenario v1\nregister a 1\nconfig escrows=5\n").find("line 3"), std::string::npos);
  EXPECT_NE(code_line("sae-scenario v1\nconfig escrows=4\n").find("line 2"), std::string::npos);
  EXPECT_NE(code_line("sae-scenario v1\nexpect_reject a NoSuchCode\n").find("line 2"), std::string::npos);
  EXPECT_NE(code_line("sae-scenario v1\ncorrupt 1 sneaky\n").find("line 2"), std::string::npos);
  EXPECT_NE(code_line("sae-scenario v1\nfile a u x 2\n").find("line 2"), std::string::npos);
}

TEST(Scenario, EmptyScenarioGivesEmptyReport) {
  for (const std::string text : {"", "# nothing\n", "sae-scenario v1\nconfig escrows=5 keys=3\n"}) {
    ScenarioReport r = run_scenario(parse_scenario(text));
    EXPECT_TRUE(r.passed);
    EXPECT_TRUE(r.steps.empty());
  }
}

TEST(Scenario, ConfigAndCorruptions) {
  Scenario s = parse_scenario("sae-scenario v1\nconfig escrows=5 keys=3 seed=9 quota_period_ms=1000\n"
                              "corrupt 2 silent-drop\nregister a 1\n");
  EXPECT_EQ(s.options.cfg.n, 5u);
  EXPECT_EQ(s.options.cfg.f, 2u);
  EXPECT_EQ(s.options.cfg.l, 3u);
  EXPECT_EQ(s.options.seed, 9u);
  EXPECT_EQ(s.options.quota_period_ms, 1000);
  EXPECT_EQ(s.options.behaviors.at(2), vss::Behavior::kSilentDrop);
  ASSERT_EQ(s.steps.size(), 1u);
  EXPECT_EQ(s.steps[0].line, 4u);
}

TEST(Scenario, ThresholdExampleRevealsExactlyThree) {
  ScenarioReport r = run_scenario(load_scenario(scenario_path("thresholds.sae")));
  EXPECT_TRUE(r.passed) << steps_text(r);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.metrics.reveals, 3u);
  EXPECT_EQ(r.metrics.dvrf.registration, 8u);
  EXPECT_EQ(r.metrics.dvrf.reveal, 3u);
}

TEST(Scenario, CorruptMultiplyNamesTheCulprit) {
  ScenarioReport r = run_scenario(load_scenario(scenario_path("corrupt_multiply.sae")));
  EXPECT_TRUE(r.passed) << steps_text(r);
}

TEST(Scenario, RejectionsAreRecorded) {
  ScenarioReport r = run_scenario(load_scenario(scenario_path("rejections.sae")));
  EXPECT_TRUE(r.passed) << steps_text(r);
}

TEST(Scenario, FailedExpectationNamesTheStep) {
  Scenario s = parse_scenario(
      "sae-scenario v1\nregister a 1\nfile x a next 1 accused=m category=other\nexpect_reveal\nexpect_reveal x\n");
  ScenarioReport r = run_scenario(s);
  EXPECT_FALSE(r.passed);
  ASSERT_TRUE(r.first_failure);
  EXPECT_EQ(*r.first_failure, 2u);
  EXPECT_TRUE(r.steps[3].ok);
  try {
    run_scenario_strict(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kAssertionFailed);
    EXPECT_NE(std::string(e.what()).find("step 2"), std::string::npos);
  }
}

TEST(Scenario, SeededRunsAreReplayable) {
  Scenario s = load_scenario(scenario_path("thresholds.sae"));
  std::unique_ptr<Cluster> a, b;
  run_scenario(s, &a);
  run_scenario(s, &b);
  EXPECT_EQ(a->escrow(1).state_digest(), b->escrow(1).state_digest());
  EXPECT_EQ(a->escrow(2).buckets().encode(), b->escrow(2).buckets().encode());
}

TEST(Fuzz, EngineMatchesOracle) {
  FuzzOptions o;
  o.trials = 1000;
  FuzzReport r = fuzz_bucketing(o);
  EXPECT_EQ(r.trials, 1000u);
  EXPECT_EQ(r.divergences, 0u) << r.text();
  EXPECT_LE(r.dvrfs, 3 * r.filings);
}

TEST(Fuzz, ForcedThresholdOneRevealsImmediately) {
  FuzzOptions o;
  o.trials = 1;
  o.force_threshold = 1;
  o.max_allegations = 1;
  o.end_to_end = true;
  FuzzReport r = fuzz_bucketing(o);
  EXPECT_EQ(r.divergences, 0u) << r.text();
  EXPECT_EQ(r.filings, 1u);
  EXPECT_NE(fuzz_scenario_text(o, 5, {{0, 1}}).find("expect_reveal a0"), std::string::npos);
}

TEST(Fuzz, SeededRerunIsIdentical) {
  FuzzOptions o;
  o.trials = 50;
  o.seed = 77;
  FuzzReport a = fuzz_bucketing(o), b = fuzz_bucketing(o);
  EXPECT_EQ(a.filings, b.filings);
  EXPECT_EQ(a.dvrfs, b.dvrfs);
  o.trials = 0;
  EXPECT_THROW(fuzz_bucketing(o), Error);
}

TEST(Fuzz, EndToEndAgreesWithOracle) {
  FuzzOptions o;
  o.trials = 2;
  o.max_allegations = 5;
  o.end_to_end = true;
  o.seed = 3;
  FuzzReport r = fuzz_bucketing(o);
  EXPECT_EQ(r.divergences, 0u) << r.text();
}

TEST(Fuzz, DumpedScenarioReplays) {
  FuzzOptions o;
  std::vector<FuzzFiling> f{{0, 2}, {1, 1}, {0, 2}};
  ScenarioReport r = run_scenario(parse_scenario(fuzz_scenario_text(o, 4, f)));
  EXPECT_TRUE(r.passed) << r.text();
}

TEST(Workload, TruncatedExponential) {
  Rng rng = Rng::from_u64(5);
  double sum = 0;
  constexpr int kDraws = 20000;
  for (int i = 0; i < kDraws; ++i) {
    uint32_t t = workload_threshold(rng);
    ASSERT_GE(t, 2u);
    ASSERT_LE(t, 20u);
    sum += t;
  }
  // Exp(5) rounded and conditioned on [2, 20] has mean close to 6.
  EXPECT_NEAR(sum / kDraws, 6.0, 0.3);
}

TEST(Decoys, RateZeroFilesNothing) {
  ClusterOptions co;
  Cluster c(co);
  c.initialize();
  ASSERT_TRUE(c.register_user("d", 2).ok);
  Rng rng = Rng::from_u64(1);
  EXPECT_EQ(emit_decoys(c, {"d"}, 0, rng), 0u);
  EXPECT_TRUE(c.filed().empty());
}

TEST(Decoys, LookLikeFilingsAndNeverMatch) {
  ClusterOptions co;
  co.cfg = ProtocolConfig::for_escrows(3, 3);
  Cluster c(co);
  c.initialize();
  ASSERT_TRUE(c.register_user("d", 3).ok);
  ASSERT_TRUE(c.register_user("real", 1).ok);
  Rng rng = Rng::from_u64(2);
  EXPECT_EQ(emit_decoys(c, {"d", "unregistered"}, 5, rng), 3u);  // stops when keys run out
  ASSERT_TRUE(c.file("g", "real", std::nullopt, client::make_meta("bob", "bullying"), Bytes{'x'}, 2).ok);
  EXPECT_EQ(c.filed().size(), 4u);
  for (const auto& f : c.filed()) {
    EXPECT_FALSE(f.rejected);
    EXPECT_EQ(f.meta.size(), 2u);
    EXPECT_TRUE(f.meta.count("accused") && f.meta.count("category"));
    EXPECT_GE(f.t, 2u);
  }
  // Escrow-side records carry the same fields for decoy and genuine filings.
  std::set<size_t> shapes;
  for (const auto& [id, rec] : c.escrow(1).allegations()) shapes.insert(id.size());
  EXPECT_EQ(shapes.size(), 1u);
  EXPECT_TRUE(c.revealed_labels(1).empty());
}

TEST(Decoys, RandomAccusedNeverCoalesce) {
  Rng rng = Rng::from_u64(3);
  std::set<Bytes> scalars;
  for (int i = 0; i < 1000; ++i) {
    client::Meta m = client::make_meta(to_hex(rng.bytes(32)), "other");
    scalars.insert(client::meta_scalar(m).to_bytes());
  }
  EXPECT_EQ(scalars.size(), 1000u);
}

}  // namespace
}  // namespace sae::harness
