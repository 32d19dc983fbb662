#include <gtest/gtest.h>

#include <regex>

#include "flowcov/analyzer.hpp"
#include "flowcov/dot.hpp"
#include "flowcov/frontend.hpp"
#include "flowcov/interpreter.hpp"
#include "test_programs.hpp"

namespace flowcov {
namespace {

std::size_t count_matches(const std::string& text, const std::string& pattern) {
  const std::regex re(pattern);
  return static_cast<std::size_t>(std::distance(std::sregex_iterator(text.begin(), text.end(), re), std::sregex_iterator()));
}

TEST(DotTest, TrivialGraph) {
  const std::string dot = export_dot(build_cfg(parse("x = 1\n")));
  EXPECT_EQ(count_matches(dot, R"(\n  n\d+ \[)"), 3u);
  EXPECT_EQ(count_matches(dot, "->"), 2u);
  EXPECT_EQ(dot.rfind("digraph cfg {", 0), 0u);
}

TEST(DotTest, SaturatedScores) {
  const Cfg cfg = build_cfg(parse(testing::branching_program()));
  const std::string dot = export_dot(cfg, std::vector<double>(cfg.size(), 1.0));
  EXPECT_EQ(count_matches(dot, "fillcolor=\"#ff0000\""), cfg.size());
  EXPECT_EQ(heat_color(0.0), "#ffffff");
  EXPECT_EQ(heat_color(0.5), "#ff8080");
}

TEST(DotTest, LengthMismatchThrows) {
  const Cfg cfg = build_cfg(parse("x = 1\n"));
  EXPECT_THROW(export_dot(cfg, std::vector<double>{0.5}), std::invalid_argument);
  EXPECT_THROW(export_dot(cfg, std::nullopt, std::vector<int>{1, 1}), std::invalid_argument);
}

TEST(DotTest, CoveredNodesOutlinedOnFigureProgram) {
  const Cfg cfg = build_cfg(parse(testing::branching_program()));
  const ExecutionTrace t = execute(cfg);
  const std::vector<int> covered(t.covered_nodes.begin(), t.covered_nodes.end());
  const std::string dot = export_dot(cfg, std::nullopt, labels_from_coverage(cfg, covered));
  std::set<int> outlined_lines;
  const std::regex re(R"re(n(\d+) \[label="(\d+): [^\n]*penwidth=3)re");
  for (auto it = std::sregex_iterator(dot.begin(), dot.end(), re); it != std::sregex_iterator(); ++it) {
    outlined_lines.insert(std::stoi((*it)[2]));
  }
  EXPECT_EQ(outlined_lines, (std::set<int>{1, 2, 3, 4, 5, 9, 10, 11, 13, 14}));
  EXPECT_EQ(count_matches(dot, "penwidth=3"), covered.size());
}

TEST(DotTest, BranchLabelsAndBackEdges) {
  const Cfg cfg = build_cfg(parse(testing::branching_program()));
  const std::string dot = export_dot(cfg);
  EXPECT_EQ(count_matches(dot, R"(\[label="T"\])"), 5u);
  EXPECT_EQ(count_matches(dot, R"(\[label="F"\])"), 5u);
  EXPECT_EQ(count_matches(dot, "style=dashed"), 2u);
  EXPECT_EQ(dot, export_dot(cfg));
}

TEST(DotTest, LabelsAreEscaped) {
  const std::string dot = export_dot(build_cfg(parse("print(\"a\")\n")));
  EXPECT_NE(dot.find(R"(print(\"a\"))"), std::string::npos) << dot;
}

}  // namespace
}  // namespace flowcov
