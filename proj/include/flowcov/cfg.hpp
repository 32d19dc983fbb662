#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flowcov/ast.hpp"
#include "flowcov/value.hpp"

namespace flowcov {

enum class NodeKind { Begin, Exit, Operation, Condition };
enum class EdgeDirection { Forward, Backward };
enum class Branch { None, True, False };

/// What the interpreter does when control reaches a node.
enum class ActionKind {
  None,        // BEGIN / EXIT
  Input,       // injected input binding
  Assign,
  AugAssign,
  Print,
  Eval,        // expression statement
  Test,        // if / elif / while condition
  RangeInit,   // evaluate range(...) once and reset the loop cursor
  RangeTest,   // cursor in range? bind the loop variable
  RangeStep,   // advance the cursor
  Break,
  Continue,
  Nop,         // synthetic loop step
};

struct NodeAction {
  ActionKind kind = ActionKind::None;
  std::string name;  // input or loop variable
  Value input;
  ExprPtr target;
  ExprPtr value;
  std::string op;
  std::vector<ExprPtr> args;
  int loop_id = -1;
};

struct CfgNode {
  int index = 0;
  NodeKind kind = NodeKind::Operation;
  std::string label;
  std::optional<SourceSpan> span;
  std::vector<std::string> tokens;
  NodeAction action;
};

struct CfgEdge {
  int src = 0;
  int dst = 0;
  EdgeDirection direction = EdgeDirection::Forward;
  Branch branch = Branch::None;

  bool operator==(const CfgEdge&) const = default;
};

class CfgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Normalized control-flow graph. Nodes are indexed in topological order of
/// the forward edges; BEGIN is node 0 and EXIT the last node. Each loop adds
/// exactly one backward edge, from its step node to its condition node.
class Cfg {
 public:
  Cfg() = default;
  Cfg(std::vector<CfgNode> nodes, std::vector<CfgEdge> edges, std::uint64_t source_hash = 0);

  const std::vector<CfgNode>& nodes() const { return nodes_; }
  const std::vector<CfgEdge>& edges() const { return edges_; }
  std::size_t size() const { return nodes_.size(); }
  const CfgNode& node(int i) const { return nodes_.at(static_cast<std::size_t>(i)); }

  int begin_index() const { return 0; }
  int exit_index() const { return static_cast<int>(nodes_.size()) - 1; }

  const std::vector<int>& forward_successors(int i) const { return fwd_succ_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& forward_predecessors(int i) const { return fwd_pred_[static_cast<std::size_t>(i)]; }
  /// Sources of backward edges entering node i, ascending.
  const std::vector<int>& backward_sources(int i) const { return back_in_[static_cast<std::size_t>(i)]; }
  /// Target of the backward edge leaving node i, if any.
  std::optional<int> backward_target(int i) const;
  /// Forward successor of a condition node along the given branch.
  int branch_successor(int i, Branch b) const;

  const std::map<int, int>& line_to_node() const { return line_to_node_; }
  std::optional<int> line_of(int node) const;

  std::uint64_t source_hash() const { return source_hash_; }
  /// True when nodes carry executable actions (built from an Ast, not loaded).
  bool executable() const { return executable_; }

  /// Checks every structural invariant; throws CfgError naming the first
  /// violation.
  void validate() const;

 private:
  NodeKind node_kind_at(int i) const;

  std::vector<CfgNode> nodes_;
  std::vector<CfgEdge> edges_;
  std::vector<std::vector<int>> fwd_succ_;
  std::vector<std::vector<int>> fwd_pred_;
  std::vector<std::vector<int>> back_in_;
  std::vector<std::optional<int>> back_out_;
  std::map<int, int> line_to_node_;
  std::uint64_t source_hash_ = 0;
  bool executable_ = false;
};

/// Builds the normalized CFG. Inputs become assignment nodes right after
/// BEGIN in name order; for-range loops are lowered to init / test / body /
/// step with a backward edge.
Cfg build_cfg(const Ast& ast, const InputBindings& inputs = {});

}  // namespace flowcov
