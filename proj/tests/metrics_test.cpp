#include <gtest/gtest.h>

#include "flowcov/analyzer.hpp"
#include "flowcov/dataset.hpp"
#include "flowcov/frontend.hpp"
#include "flowcov/metrics.hpp"

namespace flowcov {
namespace {

using Labels = std::vector<std::vector<int>>;

TEST(ExactMatchTest, Fixtures) {
  EXPECT_EQ(exact_match({{1, 0, 1}}, {{1, 0, 1}}).value(), 1.0);
  EXPECT_EQ(exact_match({{1, 1, 1}}, {{1, 0, 1}}).value(), 0.0);
  EXPECT_EQ(exact_match({{1, 1}, {1, 0}}, {{1, 1}, {1, 1}}).value(), 0.5);
  EXPECT_THROW(exact_match({{1}}, {{1, 0}}), std::invalid_argument);
}

TEST(Prf1Test, HandFixture) {
  // Ten nodes, eight truly covered, everything predicted covered.
  const Labels truth{{1, 1, 1, 0, 1}, {1, 1, 0, 1, 1}};
  const Labels pred{{1, 1, 1, 1, 1}, {1, 1, 1, 1, 1}};
  const Prf1 r = prf1(pred, truth);
  EXPECT_DOUBLE_EQ(r.precision, 0.8);
  EXPECT_DOUBLE_EQ(r.recall, 1.0);
  EXPECT_DOUBLE_EQ(r.f1, 8.0 / 9.0);
}

TEST(Prf1Test, PerfectAndEmptyPredictions) {
  const Prf1 perfect = prf1({{1, 0, 1}}, {{1, 0, 1}});
  EXPECT_EQ(perfect.precision, 1.0);
  EXPECT_EQ(perfect.recall, 1.0);
  EXPECT_EQ(perfect.f1, 1.0);
  const Prf1 none = prf1({{0, 0, 0}}, {{1, 0, 1}});
  EXPECT_EQ(none.precision, 0.0);
  EXPECT_EQ(none.recall, 0.0);
  EXPECT_EQ(none.f1, 0.0);
}

TEST(BranchCorrectnessTest, Fixtures) {
  // 0 BEGIN, 1 a = 1, 2 a > 0, 3 b = 1 (T), 4 b = 2 (F), 5 EXIT.
  const Cfg cfg = build_cfg(parse("a = 1\nif a > 0:\n    b = 1\nelse:\n    b = 2\n"));
  const std::vector<const Cfg*> cfgs{&cfg};
  const std::vector<int> truth{1, 1, 1, 1, 0, 1};
  EXPECT_EQ(branch_correctness({truth}, {truth}, cfgs).value(), 1.0);
  EXPECT_EQ(branch_correctness({{1, 1, 1, 0, 1, 1}}, {truth}, cfgs).value(), 0.0);
  // Condition not covered: excluded, so nothing to count.
  const std::vector<int> dead{1, 0, 0, 0, 0, 0};
  EXPECT_FALSE(branch_correctness({dead}, {dead}, cfgs).defined());
  EXPECT_EQ(branch_correctness({dead}, {dead}, cfgs, true).total, 1u);
}

TEST(EdaTest, Fixtures) {
  EXPECT_EQ(eda({true, false}, {true, false}).value(), 1.0);
  EXPECT_EQ(eda({true, true, false, false}, {true, false, true, false}).value(), 0.5);
  EXPECT_THROW(eda({}, {}), std::invalid_argument);
}

TEST(ElaTest, Fixtures) {
  EXPECT_EQ(ela({3}, {3}).value(), 1.0);
  EXPECT_EQ(ela({4}, {3}).value(), 0.0);
  // A clean prediction on a crashing program is a miss; clean programs are
  // not counted.
  const Fraction f = ela({std::nullopt, 2, 5}, {7, 2, std::nullopt});
  EXPECT_EQ(f.hits, 1u);
  EXPECT_EQ(f.total, 2u);
}

TEST(FractionTest, EmptyIsUndefined) { EXPECT_THROW(Fraction{}.value(), std::domain_error); }

TEST(EvaluateTest, TrueCoverageScoresPerfectly) {
  GenConfig g;
  g.seed = 13;
  g.count = 150;
  g.bug_injection_rate = 0.4;
  const auto records = generate(g);
  Labels truth;
  for (const auto& r : records) truth.push_back(labels_from_coverage(r.cfg, r.covered_nodes));
  const MetricsReport m = evaluate_labels(records, truth);
  EXPECT_EQ(m.em.value(), 1.0);
  EXPECT_EQ(m.em_lines.value(), 1.0);
  EXPECT_EQ(m.bc.value(), 1.0);
  EXPECT_EQ(m.prf.precision, 1.0);
  EXPECT_EQ(m.prf.recall, 1.0);
  EXPECT_EQ(m.prf.f1, 1.0);
  EXPECT_EQ(m.eda.value(), 1.0);
  EXPECT_EQ(m.ela.value(), 1.0);
  EXPECT_LT(m.baseline_em.value(), 1.0);
  std::size_t kinds = 0;
  for (const auto& [k, n] : m.error_kinds) kinds += n;
  EXPECT_EQ(kinds, m.ela.total);
}

TEST(EvaluateTest, JsonAndTable) {
  const auto r = label_program("p", "a = 1\n", {});
  const MetricsReport m = evaluate_labels({r}, {{1, 1, 1}});
  const Json j = report_to_json(m);
  EXPECT_EQ(j["em"]["value"], 1.0);
  EXPECT_TRUE(j["ela"]["value"].is_null());
  EXPECT_NE(report_to_table(m).find("EM"), std::string::npos);
}

}  // namespace
}  // namespace flowcov
