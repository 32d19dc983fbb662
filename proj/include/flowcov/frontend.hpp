#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "flowcov/ast.hpp"

namespace flowcov {

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, Unsupported };

  ParseError(Kind kind, int line, int col, const std::string& what);

  Kind kind() const noexcept { return kind_; }
  int line() const noexcept { return line_; }
  int col() const noexcept { return col_; }

 private:
  Kind kind_;
  int line_;
  int col_;
};

enum class TokenKind { Name, Int, String, Op, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  int col = 0;
};

/// Splits one line of MiniPy into tokens. Throws ParseError on unterminated
/// strings or characters outside the language.
std::vector<Token> lex_line(std::string_view text, int line_no);

/// Parses a whole MiniPy program. Blocks are indentation based (4 spaces per
/// level, tabs rejected); comments and blank lines are skipped.
Ast parse(std::string_view source);

/// Lexical tokens of a normalized node label. Total: characters the language
/// does not know become single-character tokens.
std::vector<std::string> tokenize_stmt(std::string_view statement_text);

/// Parses a single expression (used for `k=v` input bindings).
ExprPtr parse_expression(std::string_view text);

/// Names read somewhere in the program but never assigned anywhere. These are
/// the program's implicit inputs.
std::set<std::string> free_variables(const Ast& ast);

std::uint64_t fnv1a(std::string_view text);

}  // namespace flowcov
