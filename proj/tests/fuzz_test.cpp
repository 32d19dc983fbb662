#include <gtest/gtest.h>

#include "flowcov/frontend.hpp"
#include "flowcov/fuzz.hpp"
#include "flowcov/interpreter.hpp"
#include "fuzz_fixtures.hpp"

namespace flowcov {
namespace {

FuzzBudget attempts(std::size_t n) { return FuzzBudget{n, std::nullopt}; }

TEST(RandomGeneratorTest, SameSeedSameStream) {
  const FuzzTarget t = make_fuzz_target("y = a + b\n");
  RandomInputGenerator g;
  std::mt19937_64 r1(4), r2(4);
  std::vector<FuzzAttempt> h1, h2;
  for (int i = 0; i < 20; ++i) {
    auto a = g.next(t, h1, r1);
    auto b = g.next(t, h2, r2);
    ASSERT_TRUE(a && b);
    EXPECT_EQ(inputs_to_json(*a), inputs_to_json(*b));
    h1.push_back({*a, {}});
    h2.push_back({*b, {}});
  }
}

TEST(RandomGeneratorTest, NeverRepeatsHistory) {
  const FuzzTarget t = make_fuzz_target("y = n\n");
  RandomInputGenerator g({0, 4}, 0.0);
  std::mt19937_64 rng(1);
  std::vector<FuzzAttempt> history;
  std::set<std::int64_t> seen;
  for (int i = 0; i < 5; ++i) {
    auto in = g.next(t, history, rng);
    ASSERT_TRUE(in);
    EXPECT_TRUE(seen.insert(in->at("n").as_int()).second);
    history.push_back({*in, {}});
  }
  EXPECT_FALSE(g.next(t, history, rng).has_value());
}

TEST(RandomGeneratorTest, RespectsRangeAndBoundaryBias) {
  const FuzzTarget t = make_fuzz_target("y = n\n");
  RandomInputGenerator g({-10, 100}, 0.3);
  std::mt19937_64 rng(2);
  int boundary = 0;
  for (int i = 0; i < 2000; ++i) {
    const auto v = g.draw(t, rng).at("n").as_int();
    ASSERT_GE(v, -10);
    ASSERT_LE(v, 100);
    boundary += v >= -1 && v <= 1;
  }
  EXPECT_GT(boundary, 500);
}

TEST(RandomGeneratorTest, TemplateKindsAreKept) {
  const FuzzTarget t = make_fuzz_target("y = len(s) + len(xs)\n", {{"s", Value("x")}, {"xs", Value::list({})}});
  RandomInputGenerator g;
  std::mt19937_64 rng(3);
  const auto in = g.draw(t, rng);
  EXPECT_TRUE(in.at("s").is_str());
  EXPECT_TRUE(in.at("xs").is_list());
}

TEST(FuzzTest, ZeroAttemptBudget) {
  const FuzzTarget t = make_fuzz_target("y = 10 / x\n");
  RandomInputGenerator g;
  const FuzzReport r = fuzz(t, OracleDetector(), g, attempts(0), 1);
  EXPECT_FALSE(r.found);
  EXPECT_EQ(r.attempts, 0u);
}

TEST(FuzzTest, CleanProgramWithoutInputsStopsAfterOneAttempt) {
  const FuzzTarget t = make_fuzz_target("x = 1\nprint(x)\n");
  OracleInputGenerator g;
  const FuzzReport r = fuzz(t, OracleDetector(), g, attempts(50), 1);
  EXPECT_FALSE(r.found);
  EXPECT_EQ(r.attempts, 1u);
  EXPECT_TRUE(r.exhausted);
}

TEST(FuzzTest, OracleGeneratorFindsCrashOnFirstAttempt) {
  const FuzzTarget t = make_fuzz_target("d = n - 37\nx = 100 // d\n");
  OracleInputGenerator g(200);
  const FuzzReport r = fuzz(t, OracleDetector(), g, attempts(5), 3);
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.attempts, 1u);
  EXPECT_EQ(r.triggering_inputs->at("n").as_int(), 37);
  EXPECT_EQ(r.confirmed, true);
  const ExecutionTrace trace = run_source(t.source, *r.triggering_inputs);
  EXPECT_EQ(r.verdict.crash_line, 2);
  EXPECT_EQ(trace.status, TraceStatus::Crashed);
}

TEST(FuzzTest, DivisionByInputFound) {
  const FuzzTarget t = make_fuzz_target("y = 10 / x\n");
  RandomInputGenerator g;
  const FuzzReport r = fuzz(t, OracleDetector(), g, attempts(200), 7);
  ASSERT_TRUE(r.found);
  EXPECT_EQ(r.triggering_inputs->at("x").as_int(), 0);
  EXPECT_TRUE(r.verdict.has_error);
}

TEST(FuzzTest, SeededBugsFoundByOracleDetector) {
  for (const auto& src : testing::seeded_bug_programs()) {
    const FuzzTarget t = make_fuzz_target(src);
    RandomInputGenerator g;
    const FuzzReport r = fuzz(t, OracleDetector(), g, attempts(200), 11);
    EXPECT_TRUE(r.found) << src;
    EXPECT_EQ(r.confirmed, r.found) << src;
  }
}

TEST(FuzzTest, SameSeedSameReport) {
  const FuzzTarget t = make_fuzz_target("d = n - 77\nx = 1 // d\n");
  RandomInputGenerator g1, g2;
  const auto a = fuzz_report_to_json(fuzz(t, OracleDetector(), g1, attempts(30), 5), false);
  const auto b = fuzz_report_to_json(fuzz(t, OracleDetector(), g2, attempts(30), 5), false);
  EXPECT_EQ(a, b);
}

TEST(FuzzTest, WallBudgetStops) {
  const FuzzTarget t = make_fuzz_target("x = n + 1\n");
  RandomInputGenerator g({-1000000, 1000000}, 0.0);
  FuzzBudget b;
  b.wall = std::chrono::milliseconds(50);
  const FuzzReport r = fuzz(t, OracleDetector(), g, b, 1);
  EXPECT_FALSE(r.found);
  EXPECT_GT(r.attempts, 0u);
  EXPECT_LT(r.wall_seconds, 5.0);
}

TEST(FuzzTest, ParseErrorBeforeLoopAndMissingBudget) {
  EXPECT_THROW(make_fuzz_target("x = (\n"), ParseError);
  const FuzzTarget t = make_fuzz_target("x = 1\n");
  RandomInputGenerator g;
  EXPECT_THROW(fuzz(t, OracleDetector(), g, FuzzBudget{}, 1), std::invalid_argument);
}

TEST(DurationTest, Parses) {
  EXPECT_DOUBLE_EQ(parse_duration("30s").count(), 30.0);
  EXPECT_DOUBLE_EQ(parse_duration("500ms").count(), 0.5);
  EXPECT_DOUBLE_EQ(parse_duration("2m").count(), 120.0);
  EXPECT_THROW(parse_duration("fast"), std::invalid_argument);
  EXPECT_THROW(parse_duration("3h"), std::invalid_argument);
}

}  // namespace
}  // namespace flowcov
