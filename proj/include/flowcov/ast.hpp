#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace flowcov {

struct SourceSpan {
  int start_line = 1;
  int end_line = 1;
  int start_col = 0;

  bool operator==(const SourceSpan&) const = default;
};

enum class ExprKind {
  IntLiteral,
  BoolLiteral,
  StringLiteral,
  ListLiteral,
  Name,
  BinaryOp,
  UnaryOp,
  Compare,
  BoolOp,
  Index,
  Call,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression tree node. Which fields are meaningful depends on
/// `kind`:
///   IntLiteral / BoolLiteral / StringLiteral -> int_value / bool_value / str_value
///   Name        -> name
///   BinaryOp    -> op, operands[0..1]
///   UnaryOp     -> op ("-", "+", "not"), operands[0]
///   Compare     -> ops (one per link), operands (ops.size() + 1)
///   BoolOp      -> op ("and" / "or"), operands (>= 2)
///   Index       -> operands[0][operands[1]]
///   Call        -> name (builtin), operands (arguments)
///   ListLiteral -> operands (elements)
struct Expr {
  ExprKind kind = ExprKind::IntLiteral;
  std::int64_t int_value = 0;
  bool bool_value = false;
  std::string str_value;
  std::string name;
  std::string op;
  std::vector<std::string> ops;
  std::vector<ExprPtr> operands;
  int line = 1;
  int col = 0;
};

enum class StmtKind {
  Assign,
  AugAssign,
  If,
  While,
  ForRange,
  Print,
  Break,
  Continue,
  ExprStmt,
};

struct Stmt;

struct IfArm {
  ExprPtr condition;  // null for the trailing else arm
  std::string condition_text;
  SourceSpan header;
  std::vector<Stmt> body;
};

struct Stmt {
  StmtKind kind = StmtKind::ExprStmt;
  SourceSpan span;
  /// Source text of the statement's own line, indentation and comment removed.
  std::string text;

  // Assign / AugAssign: target is a Name or Index expression.
  ExprPtr target;
  ExprPtr value;
  std::string op;  // "+=", "-=", ... for AugAssign

  // If
  std::vector<IfArm> arms;

  // While
  ExprPtr condition;
  std::string condition_text;

  // ForRange
  std::string loop_var;
  std::vector<ExprPtr> range_args;
  std::vector<std::string> range_arg_texts;

  // While / ForRange
  std::vector<Stmt> body;

  // Print
  std::vector<ExprPtr> args;
};

struct Ast {
  std::vector<Stmt> statements;
  /// Stable fingerprint of the source text the tree was parsed from.
  std::uint64_t source_hash = 0;
};

}  // namespace flowcov
