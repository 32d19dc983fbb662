#include <gtest/gtest.h>

#include "flowcov/frontend.hpp"
#include "flowcov/interpreter.hpp"
#include "test_programs.hpp"

namespace flowcov {
namespace {

TEST(ExecuteTest, BranchingProgramCoverage) {
  const std::string src = testing::branching_program();
  Ast ast = parse(src);
  InputBindings inputs{{"x", Value(10)}};
  Cfg cfg = build_cfg(ast, inputs);
  ExecutionTrace t = execute(ast, cfg, inputs, 1000);
  EXPECT_EQ(t.status, TraceStatus::Normal);
  EXPECT_EQ(t.covered_lines, (std::set<int>{1, 2, 3, 4, 5, 9, 10, 11, 13, 14}));
  // x: 10 -> 8 -> 6 -> 4, then + sum(range(100)) = 4954, and 4954 % 3 == 1.
  EXPECT_EQ(t.final_env.at("x"), Value(4954));
  EXPECT_EQ(t.output.back(), "x devide by 3 is 1");
  EXPECT_TRUE(t.covers(cfg.exit_index()));
}

TEST(ExecuteTest, ZeroDivisionCrash) {
  Ast ast = parse("a = 5\nb = 0\nc = a / b");
  Cfg cfg = build_cfg(ast);
  ExecutionTrace t = execute(ast, cfg, {});
  EXPECT_EQ(t.status, TraceStatus::Crashed);
  EXPECT_EQ(t.error_kind, ErrorKind::ZeroDivision);
  ASSERT_TRUE(t.crash_node.has_value());
  EXPECT_EQ(cfg.line_of(*t.crash_node), 3);
  EXPECT_TRUE(t.covers(*t.crash_node));
  EXPECT_FALSE(t.covers(cfg.exit_index()));
}

TEST(ExecuteTest, StepLimit) {
  ExecutionTrace t = run_source("while True:\n    x = 1", {}, 1000);
  EXPECT_EQ(t.status, TraceStatus::StepLimitExceeded);
  EXPECT_EQ(t.walk.size(), 1000u);
  EXPECT_FALSE(t.crash_node.has_value());
}

TEST(ExecuteTest, StepLimitCountsNodeVisits) {
  EXPECT_EQ(run_source("x = 1", {}, 3).status, TraceStatus::Normal);
  EXPECT_EQ(run_source("x = 1", {}, 2).status, TraceStatus::StepLimitExceeded);
}

struct ErrorCase {
  const char* source;
  ErrorKind kind;
  int line;
};

TEST(ExecuteTest, ErrorTaxonomy) {
  const ErrorCase cases[] = {
      {"x = 7 // 0", ErrorKind::ZeroDivision, 1},
      {"x = 7 % 0", ErrorKind::ZeroDivision, 1},
      {"s = 'a'\nt = s + 1", ErrorKind::TypeMismatch, 2},
      {"x = 1 < 'b'", ErrorKind::TypeMismatch, 1},
      {"n = len(5)", ErrorKind::TypeMismatch, 1},
      {"a = [1, 2]\nb = a[2]", ErrorKind::IndexOutOfRange, 2},
      {"a = 'xy'\nb = a[-3]", ErrorKind::IndexOutOfRange, 2},
      {"a = [1]\na[1] = 0", ErrorKind::IndexOutOfRange, 2},
      {"y = q + 1", ErrorKind::NameError, 1},
      {"y = int('abc')", ErrorKind::ValueError, 1},
      {"y = 7 / 2", ErrorKind::ValueError, 1},
      {"for i in range(1, 5, 0):\n    x = i", ErrorKind::ValueError, 1},
      {"x = 2 ** -1", ErrorKind::ValueError, 1},
  };
  for (const auto& c : cases) {
    Ast ast = parse(c.source);
    Cfg cfg = build_cfg(ast);
    ExecutionTrace t = execute(cfg);
    EXPECT_EQ(t.status, TraceStatus::Crashed) << c.source;
    EXPECT_EQ(t.error_kind, c.kind) << c.source << ": " << t.error_message;
    ASSERT_TRUE(t.crash_node.has_value()) << c.source;
    EXPECT_EQ(cfg.line_of(*t.crash_node), c.line) << c.source;
  }
}

TEST(ExecuteTest, PythonArithmeticSemantics) {
  ExecutionTrace t = run_source(
      "a = -7 // 2\nb = -7 % 3\nc = 7 % -3\nd = 2 ** 10\ne = 12 / 4\nf = True + 1\n"
      "g = 'ab' * 2\nh = [1] + [2]\ni = 3 > 2 > 1\nj = 0 or 'z'\nk = 1 and 0\nl = not []\n"
      "m = abs(-4) + len('abc') + int('-12')\nn = str(5) + str(True)\no = 'abc'[-1]",
      {});
  ASSERT_EQ(t.status, TraceStatus::Normal) << t.error_message;
  const auto& env = t.final_env;
  EXPECT_EQ(env.at("a"), Value(-4));
  EXPECT_EQ(env.at("b"), Value(2));
  EXPECT_EQ(env.at("c"), Value(-2));
  EXPECT_EQ(env.at("d"), Value(1024));
  EXPECT_EQ(env.at("e"), Value(3));
  EXPECT_EQ(env.at("f"), Value(2));
  EXPECT_EQ(env.at("g"), Value("abab"));
  EXPECT_EQ(env.at("h"), Value::list({Value(1), Value(2)}));
  EXPECT_EQ(env.at("i"), Value(true));
  EXPECT_EQ(env.at("j"), Value("z"));
  EXPECT_EQ(env.at("k"), Value(0));
  EXPECT_EQ(env.at("l"), Value(true));
  EXPECT_EQ(env.at("m"), Value(-5));
  EXPECT_EQ(env.at("n"), Value("5True"));
  EXPECT_EQ(env.at("o"), Value("c"));
}

TEST(ExecuteTest, ListsAlias) {
  ExecutionTrace t = run_source("a = [1, 2]\nb = a\nb[0] = 9\nb += [3]\nprint(a)", {});
  ASSERT_EQ(t.status, TraceStatus::Normal);
  EXPECT_EQ(t.output, std::vector<std::string>{"[9, 2, 3]"});
}

TEST(ExecuteTest, ForRangeIgnoresBodyWritesToLoopVariable) {
  ExecutionTrace t = run_source("n = 3\ns = 0\nfor i in range(n):\n    i = 100\n    n = 0\n    s += 1", {});
  EXPECT_EQ(t.final_env.at("s"), Value(3));
  EXPECT_EQ(t.final_env.at("i"), Value(100));
}

TEST(ExecuteTest, EmptyRangeNeverBindsVariable) {
  ExecutionTrace t = run_source("for i in range(0):\n    x = 1", {});
  EXPECT_EQ(t.final_env.count("i"), 0u);
  EXPECT_EQ(t.final_env.count("x"), 0u);
}

TEST(ExecuteTest, BreakAndContinue) {
  ExecutionTrace t = run_source(
      "s = 0\ni = 0\nwhile True:\n    i += 1\n    if i % 2 == 0:\n        continue\n    if i > 7:\n"
      "        break\n    s += i",
      {});
  ASSERT_EQ(t.status, TraceStatus::Normal);
  EXPECT_EQ(t.final_env.at("s"), Value(1 + 3 + 5 + 7));
}

TEST(ExecuteTest, OverflowIsValueError) {
  ExecutionTrace t = run_source("x = 10 ** 30", {});
  EXPECT_EQ(t.error_kind, ErrorKind::ValueError);
}

// Every consecutive pair in the walk is joined by a CFG edge, and condition
// visits continue along exactly one of their two forward successors.
void expect_walk_on_cfg(const Cfg& cfg, const ExecutionTrace& t) {
  for (std::size_t k = 0; k + 1 < t.walk.size(); ++k) {
    const int a = t.walk[k];
    const int b = t.walk[k + 1];
    bool joined = false;
    for (const CfgEdge& e : cfg.edges()) joined |= e.src == a && e.dst == b;
    EXPECT_TRUE(joined) << a << " -> " << b;
    if (cfg.node(a).kind == NodeKind::Condition) {
      const auto& succ = cfg.forward_successors(a);
      EXPECT_EQ(std::count(succ.begin(), succ.end(), b), 1);
    }
  }
}

TEST(ExecuteTest, WalkFollowsEdges) {
  for (int x : {0, 3, 5, 10, 11}) {
    InputBindings in{{"x", Value(x)}};
    Ast ast = parse(testing::branching_program());
    Cfg cfg = build_cfg(ast, in);
    ExecutionTrace t = execute(ast, cfg, in);
    expect_walk_on_cfg(cfg, t);
    EXPECT_EQ(t.walk.front(), 0);
    EXPECT_EQ(t.walk.back(), cfg.exit_index());
  }
}

TEST(ExecuteTest, Deterministic) {
  auto a = run_source(testing::branching_program(), {{"x", Value(7)}});
  auto b = run_source(testing::branching_program(), {{"x", Value(7)}});
  EXPECT_EQ(a.walk, b.walk);
  EXPECT_EQ(a.output, b.output);
}

TEST(ExecuteTest, MismatchedCfgIsUsageError) {
  Ast ast = parse("x = 1");
  Cfg other = build_cfg(parse("x = 2"));
  EXPECT_THROW(execute(ast, other, {}), std::invalid_argument);
  Cfg with_inputs = build_cfg(ast, {{"y", Value(1)}});
  EXPECT_THROW(execute(ast, with_inputs, {}), std::invalid_argument);
}

}  // namespace
}  // namespace flowcov
