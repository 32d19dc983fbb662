#include "flowcov/frontend.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <limits>

namespace flowcov {

ParseError::ParseError(Kind kind, int line, int col, const std::string& what)
    : std::runtime_error((kind == Kind::Syntax ? "syntax error" : "unsupported construct") +
                         std::string(" at line ") + std::to_string(line) + ", column " +
                         std::to_string(col) + ": " + what),
      kind_(kind),
      line_(line),
      col_(col) {}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

namespace {

constexpr std::array<std::string_view, 13> kMultiCharOps = {
    "**=", "//=", "**", "//", "==", "!=", "<=", ">=", "+=", "-=", "*=", "/=", "%="};

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Shared scanner. In strict mode malformed input throws; otherwise the scan is
// total and odd characters come back as one-character operator tokens.
std::vector<Token> scan(std::string_view text, int line_no, bool strict) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i;
      continue;
    }
    if (c == '#') {
      break;
    }
    const int col = static_cast<int>(i);
    if (is_name_start(c)) {
      std::size_t j = i + 1;
      while (j < text.size() && is_name_char(text[j])) ++j;
      tokens.push_back({TokenKind::Name, std::string(text.substr(i, j - i)), col});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i + 1;
      while (j < text.size() && is_name_char(text[j])) ++j;
      tokens.push_back({TokenKind::Int, std::string(text.substr(i, j - i)), col});
      i = j;
      continue;
    }
    if (c == '\'' || c == '"') {
      std::size_t j = i + 1;
      bool closed = false;
      while (j < text.size()) {
        if (text[j] == '\\' && j + 1 < text.size()) {
          j += 2;
          continue;
        }
        if (text[j] == c) {
          closed = true;
          ++j;
          break;
        }
        ++j;
      }
      if (!closed && strict) {
        throw ParseError(ParseError::Kind::Syntax, line_no, col, "unterminated string literal");
      }
      tokens.push_back({TokenKind::String, std::string(text.substr(i, j - i)), col});
      i = j;
      continue;
    }
    bool matched = false;
    for (std::string_view op : kMultiCharOps) {
      if (text.substr(i, op.size()) == op) {
        tokens.push_back({TokenKind::Op, std::string(op), col});
        i += op.size();
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (strict && (static_cast<unsigned char>(c) >= 0x80 || !std::ispunct(static_cast<unsigned char>(c)))) {
      throw ParseError(ParseError::Kind::Syntax, line_no, col,
                       std::string("unexpected character '") + c + "'");
    }
    tokens.push_back({TokenKind::Op, std::string(1, c), col});
    ++i;
  }
  return tokens;
}

bool is_unsupported_keyword(std::string_view word) {
  static constexpr std::array<std::string_view, 22> kWords = {
      "def",    "class", "import", "from",  "try",    "except",   "finally", "with",
      "lambda", "return", "yield", "raise", "global", "nonlocal", "del",     "assert",
      "async",  "await", "pass",   "None",  "is",     "in"};
  return std::find(kWords.begin(), kWords.end(), word) != kWords.end();
}

bool is_reserved(std::string_view word) {
  static constexpr std::array<std::string_view, 12> kWords = {
      "if", "elif", "else", "while", "for", "break", "continue", "and", "or", "not", "True", "False"};
  return std::find(kWords.begin(), kWords.end(), word) != kWords.end() ||
         is_unsupported_keyword(word);
}

bool is_builtin(std::string_view name) {
  return name == "range" || name == "len" || name == "int" || name == "str" || name == "abs";
}

std::string decode_string(const Token& tok, int line_no, int indent) {
  std::string out;
  const std::string& raw = tok.text;
  for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
    if (raw[i] != '\\') {
      out.push_back(raw[i]);
      continue;
    }
    ++i;
    switch (raw[i]) {
      case 'n': out.push_back('\n'); break;
      case 't': out.push_back('\t'); break;
      case '\\': out.push_back('\\'); break;
      case '\'': out.push_back('\''); break;
      case '"': out.push_back('"'); break;
      default:
        throw ParseError(ParseError::Kind::Unsupported, line_no, indent + tok.col + static_cast<int>(i),
                         "unsupported escape sequence");
    }
  }
  return out;
}

struct Line {
  int no = 0;
  int indent = 0;
  std::string text;
  std::vector<Token> tokens;
};

class ExprParser {
 public:
  ExprParser(const Line& line, std::size_t pos = 0) : line_(line), pos_(pos) {}

  std::size_t pos() const { return pos_; }
  const Token& peek(std::size_t ahead = 0) const {
    static const Token kEnd{TokenKind::End, "", 0};
    return pos_ + ahead < line_.tokens.size() ? line_.tokens[pos_ + ahead] : kEnd;
  }
  bool at_end() const { return pos_ >= line_.tokens.size(); }
  bool peek_is(std::string_view text) const {
    const Token& t = peek();
    return t.kind != TokenKind::End && t.kind != TokenKind::String && t.text == text;
  }
  const Token& next() {
    const Token& t = peek();
    if (!at_end()) ++pos_;
    return t;
  }
  int col_of(const Token& t) const {
    return line_.indent + (t.kind == TokenKind::End ? static_cast<int>(line_.text.size()) : t.col);
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(ParseError::Kind::Syntax, line_.no, col_of(peek()), what);
  }
  [[noreturn]] void unsupported(const std::string& what) const {
    throw ParseError(ParseError::Kind::Unsupported, line_.no, col_of(peek()), what);
  }
  void expect(std::string_view text) {
    if (!peek_is(text)) {
      fail(at_end() ? "expected '" + std::string(text) + "' before end of line"
                    : "expected '" + std::string(text) + "' but found '" + peek().text + "'");
    }
    next();
  }
  void expect_end() {
    if (!at_end()) fail("unexpected '" + peek().text + "'");
  }
  /// End offset (in line text) of the last consumed token.
  std::size_t consumed_end() const {
    if (pos_ == 0) return 0;
    const Token& t = line_.tokens[pos_ - 1];
    return static_cast<std::size_t>(t.col) + t.text.size();
  }

  ExprPtr expression() { return or_expr(); }

 private:
  std::shared_ptr<Expr> make(ExprKind kind, const Token& at) const {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->line = line_.no;
    e->col = col_of(at);
    return e;
  }

  ExprPtr or_expr() {
    const Token& start = peek();
    ExprPtr left = and_expr();
    if (!peek_is("or")) return left;
    auto e = make(ExprKind::BoolOp, start);
    e->op = "or";
    e->operands.push_back(left);
    while (peek_is("or")) {
      next();
      e->operands.push_back(and_expr());
    }
    return e;
  }

  ExprPtr and_expr() {
    const Token& start = peek();
    ExprPtr left = not_expr();
    if (!peek_is("and")) return left;
    auto e = make(ExprKind::BoolOp, start);
    e->op = "and";
    e->operands.push_back(left);
    while (peek_is("and")) {
      next();
      e->operands.push_back(not_expr());
    }
    return e;
  }

  ExprPtr not_expr() {
    if (peek_is("not")) {
      const Token& t = next();
      auto e = make(ExprKind::UnaryOp, t);
      e->op = "not";
      e->operands.push_back(not_expr());
      return e;
    }
    return comparison();
  }

  static bool is_compare_op(const Token& t) {
    if (t.kind != TokenKind::Op) return false;
    return t.text == "==" || t.text == "!=" || t.text == "<" || t.text == "<=" || t.text == ">" ||
           t.text == ">=";
  }

  ExprPtr comparison() {
    const Token& start = peek();
    ExprPtr left = arith();
    if (peek_is("in") || peek_is("is")) unsupported("'" + peek().text + "' comparisons are not supported");
    if (!is_compare_op(peek())) return left;
    auto e = make(ExprKind::Compare, start);
    e->operands.push_back(left);
    while (is_compare_op(peek())) {
      e->ops.push_back(next().text);
      e->operands.push_back(arith());
    }
    if (peek_is("in") || peek_is("is")) unsupported("'" + peek().text + "' comparisons are not supported");
    return e;
  }

  ExprPtr binary(const Token& at, std::string op, ExprPtr lhs, ExprPtr rhs) const {
    auto e = make(ExprKind::BinaryOp, at);
    e->op = std::move(op);
    e->operands = {std::move(lhs), std::move(rhs)};
    return e;
  }

  ExprPtr arith() {
    const Token& start = peek();
    ExprPtr left = term();
    while (peek().kind == TokenKind::Op && (peek().text == "+" || peek().text == "-")) {
      std::string op = next().text;
      left = binary(start, op, left, term());
    }
    return left;
  }

  ExprPtr term() {
    const Token& start = peek();
    ExprPtr left = factor();
    while (peek().kind == TokenKind::Op &&
           (peek().text == "*" || peek().text == "/" || peek().text == "//" || peek().text == "%")) {
      std::string op = next().text;
      left = binary(start, op, left, factor());
    }
    return left;
  }

  ExprPtr factor() {
    if (peek().kind == TokenKind::Op && (peek().text == "-" || peek().text == "+")) {
      const Token& t = next();
      auto e = make(ExprKind::UnaryOp, t);
      e->op = t.text;
      e->operands.push_back(factor());
      return e;
    }
    return power();
  }

  ExprPtr power() {
    const Token& start = peek();
    ExprPtr base = postfix();
    if (peek_is("**")) {
      next();
      return binary(start, "**", base, factor());
    }
    return base;
  }

  ExprPtr postfix() {
    const Token& start = peek();
    ExprPtr e = atom();
    while (true) {
      if (peek_is("[")) {
        next();
        if (peek_is(":")) unsupported("slices are not supported");
        ExprPtr index = expression();
        if (peek_is(":")) unsupported("slices are not supported");
        expect("]");
        auto ix = make(ExprKind::Index, start);
        ix->operands = {e, index};
        e = ix;
      } else if (peek_is(".")) {
        unsupported("attribute access and method calls are not supported");
      } else if (peek_is("(")) {
        unsupported("only builtin functions can be called");
      } else {
        return e;
      }
    }
  }

  ExprPtr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::End:
        fail("unexpected end of line");
      case TokenKind::Int: {
        next();
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
          throw ParseError(ParseError::Kind::Syntax, line_.no, col_of(t),
                           "invalid integer literal '" + t.text + "'");
        }
        auto e = make(ExprKind::IntLiteral, t);
        e->int_value = value;
        return e;
      }
      case TokenKind::String: {
        next();
        auto e = make(ExprKind::StringLiteral, t);
        e->str_value = decode_string(t, line_.no, line_.indent);
        return e;
      }
      case TokenKind::Name:
        return name_or_call();
      case TokenKind::Op:
        break;
    }
    if (t.text == "(") {
      next();
      if (peek_is(")")) unsupported("tuples are not supported");
      ExprPtr inner = expression();
      if (peek_is(",")) unsupported("tuples are not supported");
      expect(")");
      return inner;
    }
    if (t.text == "[") {
      next();
      auto e = make(ExprKind::ListLiteral, t);
      if (!peek_is("]")) {
        e->operands.push_back(expression());
        while (peek_is(",")) {
          next();
          if (peek_is("]")) break;
          e->operands.push_back(expression());
        }
      }
      expect("]");
      return e;
    }
    if (t.text == "{") unsupported("dictionaries and sets are not supported");
    fail("unexpected '" + t.text + "'");
  }

  ExprPtr name_or_call() {
    const Token& t = next();
    if (t.text == "True" || t.text == "False") {
      auto e = make(ExprKind::BoolLiteral, t);
      e->bool_value = t.text == "True";
      return e;
    }
    if (is_unsupported_keyword(t.text)) {
      throw ParseError(ParseError::Kind::Unsupported, line_.no, col_of(t),
                       "'" + t.text + "' is not supported");
    }
    if (is_reserved(t.text)) {
      throw ParseError(ParseError::Kind::Syntax, line_.no, col_of(t),
                       "unexpected keyword '" + t.text + "'");
    }
    if (!peek_is("(")) {
      auto e = make(ExprKind::Name, t);
      e->name = t.text;
      return e;
    }
    if (t.text == "print") {
      throw ParseError(ParseError::Kind::Unsupported, line_.no, col_of(t),
                       "print is only allowed as a statement");
    }
    if (!is_builtin(t.text)) {
      throw ParseError(ParseError::Kind::Unsupported, line_.no, col_of(t),
                       "call to unsupported function '" + t.text + "'");
    }
    next();
    auto e = make(ExprKind::Call, t);
    e->name = t.text;
    e->operands = arguments();
    return e;
  }

 public:
  /// Parses `a, b, c)` after an opening parenthesis has been consumed.
  std::vector<ExprPtr> arguments() {
    std::vector<ExprPtr> args;
    if (!peek_is(")")) {
      args.push_back(expression());
      while (peek_is(",")) {
        next();
        if (peek_is(")")) break;
        args.push_back(expression());
      }
    }
    if (peek_is("=")) unsupported("keyword arguments are not supported");
    expect(")");
    return args;
  }

 private:
  const Line& line_;
  std::size_t pos_;
};

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

class Parser {
 public:
  explicit Parser(std::string_view source) { split_lines(source); }

  std::vector<Stmt> program() {
    std::size_t idx = 0;
    if (!lines_.empty() && lines_[0].indent != 0) {
      throw ParseError(ParseError::Kind::Syntax, lines_[0].no, lines_[0].indent, "unexpected indent");
    }
    auto stmts = block(idx, 0);
    if (idx != lines_.size()) {
      throw ParseError(ParseError::Kind::Syntax, lines_[idx].no, lines_[idx].indent, "unexpected indent");
    }
    return stmts;
  }

 private:
  void split_lines(std::string_view source) {
    int no = 0;
    std::size_t start = 0;
    while (start <= source.size()) {
      std::size_t end = source.find('\n', start);
      if (end == std::string_view::npos) end = source.size();
      std::string_view raw = source.substr(start, end - start);
      ++no;
      add_line(raw, no);
      if (end == source.size()) break;
      start = end + 1;
    }
  }

  void add_line(std::string_view raw, int no) {
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    std::size_t indent = 0;
    while (indent < raw.size() && (raw[indent] == ' ' || raw[indent] == '\t')) {
      if (raw[indent] == '\t') {
        // A tab is only an error when the line carries code.
        std::string_view rest = raw.substr(indent);
        auto first = rest.find_first_not_of(" \t");
        if (first != std::string_view::npos && rest[first] != '#') {
          throw ParseError(ParseError::Kind::Syntax, no, static_cast<int>(indent),
                           "tabs are not allowed in indentation");
        }
        return;
      }
      ++indent;
    }
    std::string_view body = raw.substr(indent);
    auto tokens = scan(body, no, true);
    if (tokens.empty()) return;
    // Strip any trailing comment from the statement text.
    std::size_t text_end = 0;
    for (const Token& t : tokens) text_end = std::max(text_end, static_cast<std::size_t>(t.col) + t.text.size());
    if (indent % 4 != 0) {
      throw ParseError(ParseError::Kind::Syntax, no, static_cast<int>(indent),
                       "indentation must be a multiple of 4 spaces");
    }
    lines_.push_back(Line{no, static_cast<int>(indent), std::string(body.substr(0, text_end)), std::move(tokens)});
  }

  std::vector<Stmt> block(std::size_t& idx, int indent) {
    std::vector<Stmt> stmts;
    while (idx < lines_.size() && lines_[idx].indent == indent) {
      stmts.push_back(statement(idx, indent));
    }
    if (idx < lines_.size() && lines_[idx].indent > indent) {
      throw ParseError(ParseError::Kind::Syntax, lines_[idx].no, lines_[idx].indent, "unexpected indent");
    }
    return stmts;
  }

  std::vector<Stmt> suite(std::size_t& idx, const Line& header) {
    if (idx >= lines_.size() || lines_[idx].indent != header.indent + 4) {
      const int line = idx < lines_.size() ? lines_[idx].no : header.no + 1;
      throw ParseError(ParseError::Kind::Syntax, line, header.indent + 4, "expected an indented block");
    }
    return block(idx, header.indent + 4);
  }

  static int last_line(const std::vector<Stmt>& body, int fallback) {
    return body.empty() ? fallback : body.back().span.end_line;
  }

  /// Reads `<keyword> <expr> :` and returns the condition with its text.
  static std::pair<ExprPtr, std::string> header_condition(const Line& line) {
    ExprParser p(line, 1);
    const std::size_t begin = p.peek().col;
    ExprPtr cond = p.expression();
    const std::size_t end = p.consumed_end();
    p.expect(":");
    p.expect_end();
    return {cond, trim(std::string_view(line.text).substr(begin, end - begin))};
  }

  Stmt statement(std::size_t& idx, int indent) {
    const Line& line = lines_[idx++];
    Stmt s;
    s.span = SourceSpan{line.no, line.no, indent};
    s.text = line.text;
    const Token& head = line.tokens.front();
    const std::string word = head.kind == TokenKind::Name ? head.text : std::string();

    if (word == "if") {
      s.kind = StmtKind::If;
      IfArm arm;
      std::tie(arm.condition, arm.condition_text) = header_condition(line);
      arm.header = s.span;
      arm.body = suite(idx, line);
      s.arms.push_back(std::move(arm));
      while (idx < lines_.size() && lines_[idx].indent == indent &&
             lines_[idx].tokens.front().kind == TokenKind::Name &&
             (lines_[idx].tokens.front().text == "elif" || lines_[idx].tokens.front().text == "else")) {
        const Line& next = lines_[idx++];
        IfArm more;
        more.header = SourceSpan{next.no, next.no, indent};
        if (next.tokens.front().text == "elif") {
          std::tie(more.condition, more.condition_text) = header_condition(next);
          more.body = suite(idx, next);
          s.arms.push_back(std::move(more));
        } else {
          ExprParser p(next, 1);
          p.expect(":");
          p.expect_end();
          more.body = suite(idx, next);
          s.arms.push_back(std::move(more));
          break;
        }
      }
      s.span.end_line = last_line(s.arms.back().body, line.no);
      return s;
    }
    if (word == "elif" || word == "else") {
      throw ParseError(ParseError::Kind::Syntax, line.no, indent, "'" + word + "' without matching 'if'");
    }
    if (word == "while") {
      s.kind = StmtKind::While;
      std::tie(s.condition, s.condition_text) = header_condition(line);
      s.body = suite(idx, line);
      s.span.end_line = last_line(s.body, line.no);
      return s;
    }
    if (word == "for") {
      s.kind = StmtKind::ForRange;
      ExprParser p(line, 1);
      const Token& var = p.next();
      if (var.kind != TokenKind::Name || is_reserved(var.text)) p.fail("expected loop variable after 'for'");
      if (p.peek_is(",")) p.unsupported("tuple unpacking is not supported");
      s.loop_var = var.text;
      p.expect("in");
      if (!p.peek_is("range") || !(p.peek(1).kind == TokenKind::Op && p.peek(1).text == "(")) {
        p.unsupported("for loops may only iterate over range(...)");
      }
      p.next();
      p.next();
      while (!p.peek_is(")")) {
        const std::size_t begin = p.peek().col;
        s.range_args.push_back(p.expression());
        s.range_arg_texts.push_back(trim(std::string_view(line.text).substr(begin, p.consumed_end() - begin)));
        if (!p.peek_is(",")) break;
        p.next();
      }
      p.expect(")");
      p.expect(":");
      p.expect_end();
      if (s.range_args.empty() || s.range_args.size() > 3) {
        throw ParseError(ParseError::Kind::Syntax, line.no, indent, "range expects 1 to 3 arguments");
      }
      s.body = suite(idx, line);
      s.span.end_line = last_line(s.body, line.no);
      return s;
    }
    if (word == "break" || word == "continue") {
      ExprParser p(line, 1);
      p.expect_end();
      s.kind = word == "break" ? StmtKind::Break : StmtKind::Continue;
      return s;
    }
    if (word == "print" && line.tokens.size() > 1 && line.tokens[1].text == "(") {
      ExprParser p(line, 2);
      s.kind = StmtKind::Print;
      s.args = p.arguments();
      p.expect_end();
      return s;
    }
    if (!word.empty() && is_unsupported_keyword(word)) {
      throw ParseError(ParseError::Kind::Unsupported, line.no, indent, "'" + word + "' is not supported");
    }

    ExprParser p(line, 0);
    ExprPtr first = p.expression();
    if (p.at_end()) {
      s.kind = StmtKind::ExprStmt;
      s.value = first;
      return s;
    }
    if (p.peek_is(",")) p.unsupported("tuple assignment is not supported");
    const std::string op = p.peek().text;
    const bool plain = op == "=";
    const bool aug = op == "+=" || op == "-=" || op == "*=" || op == "/=" || op == "//=" || op == "%=" ||
                     op == "**=";
    if (!plain && !aug) p.fail("unexpected '" + op + "'");
    if (first->kind != ExprKind::Name && first->kind != ExprKind::Index) {
      throw ParseError(ParseError::Kind::Syntax, line.no, indent, "cannot assign to expression");
    }
    p.next();
    s.kind = plain ? StmtKind::Assign : StmtKind::AugAssign;
    s.op = op;
    s.target = first;
    s.value = p.expression();
    if (p.peek_is("=")) p.unsupported("chained assignment is not supported");
    p.expect_end();
    return s;
  }

  std::vector<Line> lines_;
};

void collect_names(const ExprPtr& e, std::set<std::string>& reads) {
  if (!e) return;
  if (e->kind == ExprKind::Name) reads.insert(e->name);
  for (const auto& child : e->operands) collect_names(child, reads);
}

void collect_stmt(const Stmt& s, std::set<std::string>& reads, std::set<std::string>& writes) {
  auto target_name = [&](const ExprPtr& target) {
    if (target->kind == ExprKind::Name) {
      writes.insert(target->name);
    } else {
      collect_names(target, reads);
    }
  };
  switch (s.kind) {
    case StmtKind::Assign:
      target_name(s.target);
      collect_names(s.value, reads);
      break;
    case StmtKind::AugAssign:
      target_name(s.target);
      collect_names(s.value, reads);
      break;
    case StmtKind::If:
      for (const auto& arm : s.arms) {
        collect_names(arm.condition, reads);
        for (const auto& child : arm.body) collect_stmt(child, reads, writes);
      }
      break;
    case StmtKind::While:
      collect_names(s.condition, reads);
      for (const auto& child : s.body) collect_stmt(child, reads, writes);
      break;
    case StmtKind::ForRange:
      writes.insert(s.loop_var);
      for (const auto& arg : s.range_args) collect_names(arg, reads);
      for (const auto& child : s.body) collect_stmt(child, reads, writes);
      break;
    case StmtKind::Print:
      for (const auto& arg : s.args) collect_names(arg, reads);
      break;
    case StmtKind::ExprStmt:
      collect_names(s.value, reads);
      break;
    case StmtKind::Break:
    case StmtKind::Continue:
      break;
  }
}

}  // namespace

std::vector<Token> lex_line(std::string_view text, int line_no) { return scan(text, line_no, true); }

Ast parse(std::string_view source) {
  Ast ast;
  ast.statements = Parser(source).program();
  ast.source_hash = fnv1a(source);
  return ast;
}

std::vector<std::string> tokenize_stmt(std::string_view statement_text) {
  std::vector<std::string> out;
  for (auto& tok : scan(statement_text, 1, false)) out.push_back(std::move(tok.text));
  return out;
}

ExprPtr parse_expression(std::string_view text) {
  Line line{1, 0, std::string(text), scan(text, 1, true)};
  ExprParser p(line, 0);
  ExprPtr e = p.expression();
  p.expect_end();
  return e;
}

std::set<std::string> free_variables(const Ast& ast) {
  std::set<std::string> reads;
  std::set<std::string> writes;
  for (const auto& s : ast.statements) collect_stmt(s, reads, writes);
  std::set<std::string> free;
  std::set_difference(reads.begin(), reads.end(), writes.begin(), writes.end(),
                      std::inserter(free, free.begin()));
  return free;
}

}  // namespace flowcov
