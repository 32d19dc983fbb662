#include "flowcov/cfg.hpp"

#include <algorithm>

#include "flowcov/frontend.hpp"

namespace flowcov {

Cfg::Cfg(std::vector<CfgNode> nodes, std::vector<CfgEdge> edges, std::uint64_t source_hash)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), source_hash_(source_hash) {
  const std::size_t n = nodes_.size();
  fwd_succ_.assign(n, {});
  fwd_pred_.assign(n, {});
  back_in_.assign(n, {});
  back_out_.assign(n, std::nullopt);
  for (const CfgEdge& e : edges_) {
    if (e.src < 0 || e.dst < 0 || static_cast<std::size_t>(e.src) >= n || static_cast<std::size_t>(e.dst) >= n) {
      throw CfgError("edge " + std::to_string(e.src) + "->" + std::to_string(e.dst) + " out of range");
    }
    if (e.direction == EdgeDirection::Forward) {
      fwd_succ_[e.src].push_back(e.dst);
      fwd_pred_[e.dst].push_back(e.src);
    } else {
      back_in_[e.dst].push_back(e.src);
      back_out_[e.src] = e.dst;
    }
  }
  for (auto* lists : {&fwd_succ_, &fwd_pred_, &back_in_}) {
    for (auto& l : *lists) std::sort(l.begin(), l.end());
  }
  executable_ = true;
  for (const CfgNode& node : nodes_) {
    if ((node.kind == NodeKind::Operation || node.kind == NodeKind::Condition) &&
        node.action.kind == ActionKind::None) {
      executable_ = false;
    }
    if (!node.span) continue;
    const int line = node.span->start_line;
    auto it = line_to_node_.find(line);
    // A for-range header owns three nodes; the line maps to its test.
    if (it == line_to_node_.end() || (node.kind == NodeKind::Condition && node_kind_at(it->second) != NodeKind::Condition)) {
      line_to_node_[line] = node.index;
    }
  }
}

NodeKind Cfg::node_kind_at(int i) const { return nodes_[static_cast<std::size_t>(i)].kind; }

std::optional<int> Cfg::backward_target(int i) const { return back_out_[static_cast<std::size_t>(i)]; }

int Cfg::branch_successor(int i, Branch b) const {
  for (const CfgEdge& e : edges_) {
    if (e.src == i && e.direction == EdgeDirection::Forward && e.branch == b) return e.dst;
  }
  throw CfgError("node " + std::to_string(i) + " has no branch successor");
}

std::optional<int> Cfg::line_of(int node) const {
  const auto& span = nodes_.at(static_cast<std::size_t>(node)).span;
  if (!span) return std::nullopt;
  return span->start_line;
}

void Cfg::validate() const {
  auto fail = [](const std::string& what) { throw CfgError("CFG invariant violated: " + what); };
  const int n = static_cast<int>(nodes_.size());
  if (n < 2) fail("fewer than two nodes");
  if (nodes_.front().kind != NodeKind::Begin) fail("node 0 is not BEGIN");
  if (nodes_.back().kind != NodeKind::Exit) fail("last node is not EXIT");
  for (int i = 0; i < n; ++i) {
    const CfgNode& node = nodes_[static_cast<std::size_t>(i)];
    if (node.index != i) fail("node " + std::to_string(i) + " carries index " + std::to_string(node.index));
    if (i > 0 && node.kind == NodeKind::Begin) fail("second BEGIN at " + std::to_string(i));
    if (i < n - 1 && node.kind == NodeKind::Exit) fail("second EXIT at " + std::to_string(i));
    if (node.tokens.empty()) fail("node " + std::to_string(i) + " has no tokens");
  }
  std::vector<int> true_out(n, 0), false_out(n, 0), plain_out(n, 0), back_out(n, 0);
  for (const CfgEdge& e : edges_) {
    const std::string name = std::to_string(e.src) + "->" + std::to_string(e.dst);
    if (e.direction == EdgeDirection::Forward) {
      if (e.src >= e.dst) fail("forward edge " + name + " does not increase the index");
      if (e.branch == Branch::True) ++true_out[e.src];
      else if (e.branch == Branch::False) ++false_out[e.src];
      else ++plain_out[e.src];
    } else {
      if (e.src <= e.dst) fail("backward edge " + name + " does not decrease the index");
      if (e.branch != Branch::None) fail("backward edge " + name + " carries a branch marker");
      if (nodes_[e.dst].kind != NodeKind::Condition) fail("backward edge " + name + " does not enter a condition");
      ++back_out[e.src];
    }
  }
  for (int i = 0; i < n; ++i) {
    const std::string at = " at node " + std::to_string(i);
    switch (nodes_[static_cast<std::size_t>(i)].kind) {
      case NodeKind::Condition:
        if (true_out[i] != 1 || false_out[i] != 1 || plain_out[i] != 0 || back_out[i] != 0) {
          fail("condition needs exactly one T and one F forward edge" + at);
        }
        break;
      case NodeKind::Exit:
        if (true_out[i] + false_out[i] + plain_out[i] + back_out[i] != 0) fail("EXIT has outgoing edges");
        break;
      case NodeKind::Begin:
      case NodeKind::Operation:
        if (true_out[i] + false_out[i] != 0) fail("branch marker on a non-condition edge" + at);
        if (plain_out[i] + back_out[i] != 1) fail("operation needs exactly one outgoing edge" + at);
        if (nodes_[static_cast<std::size_t>(i)].kind == NodeKind::Begin && plain_out[i] != 1) {
          fail("BEGIN needs a forward edge");
        }
        break;
    }
  }
  std::vector<bool> seen(n, false);
  seen[0] = true;
  for (int i = 0; i < n; ++i) {
    if (!seen[i]) fail("node " + std::to_string(i) + " unreachable from BEGIN");
    for (int s : fwd_succ_[i]) seen[s] = true;
  }
}

namespace {

struct Dangling {
  int src;
  Branch branch;
};

class Builder {
 public:
  Cfg build(const Ast& ast, const InputBindings& inputs) {
    int begin = add(NodeKind::Begin, "BEGIN", std::nullopt, {}, {});
    std::vector<Dangling> open{{begin, Branch::None}};
    for (const auto& [name, value] : inputs) {
      NodeAction action;
      action.kind = ActionKind::Input;
      action.name = name;
      action.input = value;
      int id = add(NodeKind::Operation, name + " = " + repr(value), std::nullopt, action, open);
      open = {{id, Branch::None}};
    }
    open = block(ast.statements, std::move(open));
    add(NodeKind::Exit, "EXIT", std::nullopt, {}, open);
    Cfg cfg(std::move(nodes_), std::move(edges_), ast.source_hash);
    cfg.validate();
    return cfg;
  }

 private:
  struct LoopContext {
    std::vector<Dangling> breaks;
    std::vector<Dangling> continues;
  };

  int add(NodeKind kind, std::string label, std::optional<SourceSpan> span, NodeAction action,
          const std::vector<Dangling>& incoming) {
    const int id = static_cast<int>(nodes_.size());
    CfgNode node;
    node.index = id;
    node.kind = kind;
    node.span = span;
    if (kind == NodeKind::Begin) {
      node.tokens = {"<begin>"};
    } else if (kind == NodeKind::Exit) {
      node.tokens = {"<exit>"};
    } else {
      node.tokens = tokenize_stmt(label);
    }
    node.label = std::move(label);
    node.action = std::move(action);
    nodes_.push_back(std::move(node));
    for (const Dangling& d : incoming) {
      edges_.push_back({d.src, id, EdgeDirection::Forward, d.branch});
    }
    return id;
  }

  static SourceSpan header_span(const SourceSpan& s) { return {s.start_line, s.start_line, s.start_col}; }

  std::vector<Dangling> block(const std::vector<Stmt>& stmts, std::vector<Dangling> open) {
    for (const Stmt& s : stmts) {
      if (open.empty()) {
        throw ParseError(ParseError::Kind::Syntax, s.span.start_line, s.span.start_col,
                         "unreachable statement after break/continue");
      }
      open = statement(s, std::move(open));
    }
    return open;
  }

  // A loop body whose single exit is a plain statement can close the loop
  // itself; anything else gets a synthetic step node.
  bool closes_loop(const std::vector<Dangling>& body_out, const LoopContext& ctx) const {
    if (!ctx.continues.empty() || body_out.size() != 1 || body_out[0].branch != Branch::None) return false;
    switch (nodes_[static_cast<std::size_t>(body_out[0].src)].action.kind) {
      case ActionKind::Assign:
      case ActionKind::AugAssign:
      case ActionKind::Print:
      case ActionKind::Eval:
        return true;
      default:
        return false;
    }
  }

  std::vector<Dangling> statement(const Stmt& s, std::vector<Dangling> open) {
    NodeAction action;
    switch (s.kind) {
      case StmtKind::Assign:
      case StmtKind::AugAssign:
      case StmtKind::Print:
      case StmtKind::ExprStmt: {
        action.kind = s.kind == StmtKind::Assign      ? ActionKind::Assign
                      : s.kind == StmtKind::AugAssign ? ActionKind::AugAssign
                      : s.kind == StmtKind::Print     ? ActionKind::Print
                                                      : ActionKind::Eval;
        action.target = s.target;
        action.value = s.value;
        action.op = s.op;
        action.args = s.args;
        const int id = add(NodeKind::Operation, s.text, s.span, action, open);
        return {{id, Branch::None}};
      }
      case StmtKind::Break:
      case StmtKind::Continue: {
        if (loops_.empty()) {
          throw ParseError(ParseError::Kind::Syntax, s.span.start_line, s.span.start_col,
                           "'" + s.text + "' outside loop");
        }
        const bool is_break = s.kind == StmtKind::Break;
        action.kind = is_break ? ActionKind::Break : ActionKind::Continue;
        const int id = add(NodeKind::Operation, s.text, s.span, action, open);
        (is_break ? loops_.back().breaks : loops_.back().continues).push_back({id, Branch::None});
        return {};
      }
      case StmtKind::If: {
        std::vector<Dangling> out;
        for (const IfArm& arm : s.arms) {
          if (!arm.condition) {
            auto arm_out = block(arm.body, std::move(open));
            out.insert(out.end(), arm_out.begin(), arm_out.end());
            open.clear();
            break;
          }
          NodeAction test;
          test.kind = ActionKind::Test;
          test.value = arm.condition;
          const int cond = add(NodeKind::Condition, arm.condition_text, arm.header, test, open);
          auto arm_out = block(arm.body, {{cond, Branch::True}});
          out.insert(out.end(), arm_out.begin(), arm_out.end());
          open = {{cond, Branch::False}};
        }
        out.insert(out.end(), open.begin(), open.end());
        return out;
      }
      case StmtKind::While: {
        action.kind = ActionKind::Test;
        action.value = s.condition;
        const int cond = add(NodeKind::Condition, s.condition_text, header_span(s.span), action, open);
        return loop_body(s, cond, std::nullopt);
      }
      case StmtKind::ForRange: {
        const int loop_id = next_loop_id_++;
        const auto& texts = s.range_arg_texts;
        const std::string start = texts.size() == 1 ? "0" : texts[0];
        const std::string stop = texts.size() == 1 ? texts[0] : texts[1];
        const std::string step = texts.size() == 3 ? texts[2] : "1";
        const bool descending = !step.empty() && step.front() == '-';

        action.kind = ActionKind::RangeInit;
        action.name = s.loop_var;
        action.args = s.range_args;
        action.loop_id = loop_id;
        const int init = add(NodeKind::Operation, s.loop_var + " = " + start, header_span(s.span), action, open);

        NodeAction test;
        test.kind = ActionKind::RangeTest;
        test.name = s.loop_var;
        test.loop_id = loop_id;
        const int cond = add(NodeKind::Condition, s.loop_var + (descending ? " > " : " < ") + stop,
                             header_span(s.span), test, {{init, Branch::None}});

        NodeAction advance;
        advance.kind = ActionKind::RangeStep;
        advance.name = s.loop_var;
        advance.loop_id = loop_id;
        return loop_body(s, cond, std::make_pair(s.loop_var + " += " + step, advance));
      }
    }
    return open;
  }

  /// Lowers the body of a loop whose condition node is `cond`. A for-range
  /// loop passes its explicit step node; while loops only get a synthetic one
  /// when the body cannot close the loop itself.
  std::vector<Dangling> loop_body(const Stmt& s, int cond,
                                  std::optional<std::pair<std::string, NodeAction>> step) {
    loops_.emplace_back();
    auto body_out = block(s.body, {{cond, Branch::True}});
    LoopContext ctx = std::move(loops_.back());
    loops_.pop_back();

    std::vector<Dangling> to_step = body_out;
    to_step.insert(to_step.end(), ctx.continues.begin(), ctx.continues.end());
    if (!to_step.empty()) {
      int source;
      if (!step && closes_loop(body_out, ctx)) {
        source = body_out[0].src;
      } else if (step) {
        source = add(NodeKind::Operation, step->first, header_span(s.span), step->second, to_step);
      } else {
        NodeAction nop;
        nop.kind = ActionKind::Nop;
        source = add(NodeKind::Operation, "pass", std::nullopt, nop, to_step);
      }
      edges_.push_back({source, cond, EdgeDirection::Backward, Branch::None});
    }
    std::vector<Dangling> out{{cond, Branch::False}};
    out.insert(out.end(), ctx.breaks.begin(), ctx.breaks.end());
    return out;
  }

  std::vector<CfgNode> nodes_;
  std::vector<CfgEdge> edges_;
  std::vector<LoopContext> loops_;
  int next_loop_id_ = 0;
};

}  // namespace

Cfg build_cfg(const Ast& ast, const InputBindings& inputs) { return Builder().build(ast, inputs); }

}  // namespace flowcov
