#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "flowcov/ast.hpp"
#include "flowcov/cfg.hpp"
#include "flowcov/value.hpp"

namespace flowcov {

enum class ErrorKind { ZeroDivision, TypeMismatch, IndexOutOfRange, NameError, ValueError };
enum class TraceStatus { Normal, Crashed, StepLimitExceeded };

std::string to_string(ErrorKind kind);
std::string to_string(TraceStatus status);
ErrorKind error_kind_from_string(std::string_view text);
TraceStatus trace_status_from_string(std::string_view text);

inline constexpr std::size_t kDefaultStepLimit = 1'000'000;

struct ExecutionTrace {
  /// Distinct nodes in first-visit order.
  std::vector<int> covered_nodes;
  /// Every node visit in order (the walk on the CFG).
  std::vector<int> walk;
  std::set<int> covered_lines;
  TraceStatus status = TraceStatus::Normal;
  std::optional<int> crash_node;
  std::optional<ErrorKind> error_kind;
  std::string error_message;
  std::map<std::string, Value> final_env;
  std::vector<std::string> output;

  bool covers(int node) const;
};

/// Runs a CFG built by build_cfg. A node is covered as soon as control reaches
/// it, including the node whose evaluation raises. Runtime errors end up in
/// the trace, never as exceptions.
ExecutionTrace execute(const Cfg& cfg, std::size_t step_limit = kDefaultStepLimit);

/// Same, after checking that `cfg` was built from `ast` with `inputs`; a
/// mismatch throws std::invalid_argument.
ExecutionTrace execute(const Ast& ast, const Cfg& cfg, const InputBindings& inputs,
                       std::size_t step_limit = kDefaultStepLimit);

/// Parse, build and run in one go.
ExecutionTrace run_source(std::string_view source, const InputBindings& inputs,
                          std::size_t step_limit = kDefaultStepLimit);

}  // namespace flowcov
