#include <gtest/gtest.h>

#include "flowcov/analyzer.hpp"
#include "flowcov/dataset.hpp"
#include "flowcov/frontend.hpp"
#include "flowcov/interpreter.hpp"

namespace flowcov {
namespace {

Cfg cfg_of(const std::string& src) { return build_cfg(parse(src)); }

TEST(DetectTest, ExitLabelDecides) {
  const Cfg cfg = cfg_of("a = 1\nb = 2\n");
  EXPECT_FALSE(detect({1, 1, 1, 1}, cfg));
  EXPECT_TRUE(detect({1, 1, 1, 0}, cfg));
  EXPECT_THROW(detect({1, 1}, cfg), std::invalid_argument);
}

TEST(LocalizeTest, DivisionByZeroLine) {
  const std::string src = "a = 5\nb = 0\nc = a / b\n";
  const Cfg cfg = cfg_of(src);
  const ExecutionTrace t = run_source(src, {});
  ASSERT_EQ(t.status, TraceStatus::Crashed);
  const std::vector<int> covered(t.covered_nodes.begin(), t.covered_nodes.end());
  const auto labels = labels_from_coverage(cfg, covered);
  EXPECT_TRUE(detect(labels, cfg));
  const ErrorVerdict v = analyze(labels, cfg);
  EXPECT_EQ(v.crash_node, t.crash_node);
  EXPECT_EQ(v.crash_line, 3);
}

TEST(LocalizeTest, FurthestDeadEndWins) {
  // Nodes: 0 BEGIN, 1..8 straight line, 9 EXIT. Labels cover 0..4 and 7.
  const Cfg cfg = cfg_of("a = 1\na = 2\na = 3\na = 4\na = 5\na = 6\na = 7\na = 8\n");
  std::vector<int> labels(cfg.size(), 0);
  for (int i : {0, 1, 2, 3, 4, 7}) labels[static_cast<std::size_t>(i)] = 1;
  EXPECT_EQ(localize(labels, cfg), 7);
}

TEST(LocalizeTest, OnlyBeginCovered) {
  const Cfg cfg = cfg_of("a = 1\n");
  EXPECT_EQ(localize({1, 0, 0}, cfg), 0);
  const ErrorVerdict v = analyze({1, 0, 0}, cfg);
  EXPECT_TRUE(v.has_error);
  EXPECT_EQ(v.crash_node, 0);
  EXPECT_EQ(v.crash_line, std::nullopt);
}

TEST(LocalizeTest, UncoveredBeginIsMalformed) { EXPECT_THROW(localize({0, 1, 0}, cfg_of("a = 1\n")), AnalysisError); }

TEST(LocalizeTest, BackwardEdgesIgnored) {
  // The loop step's only out-edge is backward, so with the loop exit
  // uncovered the step is a dead end.
  const Cfg cfg = cfg_of("i = 0\nwhile i < 3:\n    i += 1\n");
  EXPECT_EQ(localize({1, 1, 1, 1, 0}, cfg), 3);
}

TEST(AnalyzeTest, CleanVerdictHasNoNode) {
  const Cfg cfg = cfg_of("a = 1\n");
  const ErrorVerdict v = analyze({1, 1, 1}, cfg);
  EXPECT_FALSE(v.has_error);
  EXPECT_EQ(v.crash_node, std::nullopt);
  EXPECT_EQ(verdict_to_json(v).dump(), R"({"crash_line":null,"crash_node":null,"has_error":false})");
}

TEST(OracleEquivalenceTest, TrueCoverageRecoversInterpreterVerdicts) {
  GenConfig g;
  g.seed = 31;
  g.count = 300;
  g.bug_injection_rate = 0.5;
  std::size_t crashed = 0;
  for (const auto& r : generate(g)) {
    const auto labels = labels_from_coverage(r.cfg, r.covered_nodes);
    ASSERT_EQ(detect(labels, r.cfg), r.status == TraceStatus::Crashed) << r.id;
    if (r.status != TraceStatus::Crashed) continue;
    ++crashed;
    EXPECT_EQ(localize(labels, r.cfg), r.crash_node) << r.id;
  }
  EXPECT_GT(crashed, 100u);
}

}  // namespace
}  // namespace flowcov
