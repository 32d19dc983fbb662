#include "flowcov/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "flowcov/frontend.hpp"
#include "flowcov/parallel.hpp"

namespace flowcov {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void GenConfig::validate() const {
  auto check_range = [](const IntRange& r, const char* name) {
    if (r.min > r.max) throw std::invalid_argument(std::string(name) + ": min > max");
  };
  check_range(stmt_range, "stmt_range");
  check_range(loop_bound_range, "loop_bound_range");
  check_range(int_literal_range, "int_literal_range");
  check_range(list_length_range, "list_length_range");
  if (count == 0) throw std::invalid_argument("count must be positive");
  if (stmt_range.min < 1) throw std::invalid_argument("stmt_range: need at least one statement");
  if (list_length_range.min < 1) throw std::invalid_argument("list_length_range: lists must be non-empty");
  if (max_nesting < 0) throw std::invalid_argument("max_nesting must be >= 0");
  if (!(bug_injection_rate >= 0.0 && bug_injection_rate <= 1.0)) {
    throw std::invalid_argument("bug_injection_rate must be in [0, 1]");
  }
  if (step_limit == 0) throw std::invalid_argument("step_limit must be positive");
}

namespace {

// Small helpers over mt19937_64 that do not depend on the standard library's
// distribution implementations, so output is identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(eng_() % span);
  }
  std::int64_t uniform(const IntRange& r) { return uniform(r.min, r.max); }
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }
  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(items.size()) - 1))];
  }
  std::size_t weighted(const std::vector<int>& weights) {
    int total = 0;
    for (int w : weights) total += w;
    std::int64_t r = uniform(0, total - 1);
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (r < weights[i]) return i;
      r -= weights[i];
    }
    return weights.size() - 1;
  }

 private:
  std::mt19937_64 eng_;
};

const std::vector<std::string> kInputNames = {"n", "m", "k", "p"};
const std::vector<std::string> kIntNames = {"x", "y", "z", "t", "u", "v", "w", "total", "count", "acc"};
const std::vector<std::string> kStrNames = {"s", "msg", "word"};
const std::vector<std::string> kListNames = {"arr", "vals", "nums"};
const std::vector<std::string> kLoopVars = {"i", "j", "h"};
const std::vector<std::string> kCounters = {"c", "d", "e"};
const std::vector<std::string> kStrLiterals = {"'a'", "'hi'", "'abc'", "'ok'", "'xyz'", "'12'", "'7'"};
const std::vector<std::string> kBadIntLiterals = {"'abc'", "'x1'", "'4a'", "''", "'seven'"};

enum class VarType { Int, Str, List };

struct Scope {
  std::vector<std::string> ints;
  std::vector<std::string> strs;
  std::vector<std::string> lists;

  void add(std::vector<std::string>& v, const std::string& name) {
    if (std::find(v.begin(), v.end(), name) == v.end()) v.push_back(name);
  }
};

std::vector<std::string> intersect(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out;
  for (const auto& x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) out.push_back(x);
  }
  return out;
}

struct Draft {
  std::string source;
  InputBindings inputs;
  std::optional<ErrorKind> bug;
  int bug_line = 0;
};

class ProgramGenerator {
 public:
  ProgramGenerator(const GenConfig& config, Rng& rng) : cfg_(config), rng_(rng) {}

  Draft draft(std::optional<ErrorKind> bug) {
    lines_.clear();
    types_.clear();
    list_len_.clear();
    protected_.clear();
    scope_ = Scope{};
    loop_depth_ = 0;
    bug_line_ = 0;
    inputs_.clear();

    const auto n_inputs = rng_.uniform(0, 3);
    std::vector<std::string> names = kInputNames;
    for (std::int64_t i = 0; i < n_inputs; ++i) {
      const auto j = static_cast<std::size_t>(rng_.uniform(i, static_cast<std::int64_t>(names.size()) - 1));
      std::swap(names[static_cast<std::size_t>(i)], names[j]);
      const std::string& name = names[static_cast<std::size_t>(i)];
      inputs_[name] = Value(rng_.uniform(cfg_.loop_bound_range));
      declare(name, VarType::Int);
      scope_.add(scope_.ints, name);
    }
    input_names_.assign(names.begin(), names.begin() + n_inputs);

    const auto n_top = rng_.uniform(cfg_.stmt_range);
    const auto bug_pos = rng_.uniform(0, n_top - 1);
    for (std::int64_t i = 0; i < n_top; ++i) {
      if (bug && i == bug_pos) {
        place_bug(*bug);
      } else {
        statement(0);
      }
    }
    Draft d;
    for (const auto& l : lines_) d.source += l + "\n";
    d.inputs = inputs_;
    d.bug = bug;
    d.bug_line = bug_line_;
    return d;
  }

 private:
  void emit(int depth, const std::string& text) { lines_.push_back(std::string(4 * depth, ' ') + text); }

  void declare(const std::string& name, VarType t) { types_[name] = t; }

  bool in_loop() const { return loop_depth_ > 0; }

  std::string literal() { return std::to_string(rng_.uniform(cfg_.int_literal_range)); }

  std::string small_positive(std::int64_t hi) { return std::to_string(rng_.uniform(2, hi)); }

  std::vector<std::string> assignable_ints() const {
    std::vector<std::string> out;
    for (const auto& v : scope_.ints) {
      if (!protected_.count(v)) out.push_back(v);
    }
    return out;
  }

  std::optional<std::string> fresh(const std::vector<std::string>& pool) {
    std::vector<std::string> unused;
    for (const auto& name : pool) {
      if (!types_.count(name)) unused.push_back(name);
    }
    if (unused.empty()) return std::nullopt;
    return rng_.pick(unused);
  }

  // Target for a new int value: an existing unprotected int or a fresh name.
  std::string int_target() {
    auto existing = assignable_ints();
    if (!existing.empty() && rng_.chance(0.5)) return rng_.pick(existing);
    if (auto name = fresh(kIntNames)) return *name;
    if (!existing.empty()) return rng_.pick(existing);
    return "x";  // every int name is taken by another type; rejected later if it clashes
  }

  std::string int_atom() {
    if (!scope_.ints.empty() && rng_.chance(0.6)) return rng_.pick(scope_.ints);
    if (rng_.chance(0.1)) return "-" + small_positive(9);
    return literal();
  }

  std::string int_expr(int depth = 0) {
    const auto r = rng_.uniform(0, 9);
    if (depth >= 2 || r < 4) return int_atom();
    auto operand = [&] {
      if (depth + 1 < 2 && rng_.chance(0.2)) return "(" + int_expr(depth + 1) + ")";
      return int_atom();
    };
    if (r <= 6) return operand() + (rng_.chance(0.5) ? " + " : " - ") + operand();
    if (r == 7) {
      if (in_loop()) return operand() + " + " + operand();
      return operand() + " * " + small_positive(5);
    }
    if (r == 8) {
      const char* op = rng_.chance(0.5) ? " // " : " % ";
      if (!input_names_.empty() && rng_.chance(0.3)) return operand() + op + rng_.pick(input_names_);
      return operand() + op + small_positive(5);
    }
    const auto b = rng_.uniform(0, 3);
    if (b == 0 && !scope_.strs.empty()) return "len(" + rng_.pick(scope_.strs) + ")";
    if (b == 1 && !scope_.lists.empty()) {
      const std::string& l = rng_.pick(scope_.lists);
      return rng_.chance(0.5) ? "len(" + l + ")" : l + "[" + std::to_string(rng_.uniform(0, list_len_[l] - 1)) + "]";
    }
    if (b == 2) return "int(" + rng_.pick(std::vector<std::string>{"'12'", "'7'", "'-3'", "'40'"}) + ")";
    return "abs(" + int_atom() + ")";
  }

  std::string comparison() {
    static const std::vector<std::string> ops = {"<", "<=", ">", ">=", "==", "!="};
    std::string lhs = scope_.ints.empty() ? int_expr(1) : rng_.pick(scope_.ints);
    if (rng_.chance(0.3)) lhs = int_expr(1);
    std::string rhs = rng_.chance(0.7) ? literal() : int_atom();
    if (rhs == lhs) rhs = literal();
    return lhs + " " + rng_.pick(ops) + " " + rhs;
  }

  std::string condition() {
    const auto r = rng_.uniform(0, 9);
    if (r <= 5) return comparison();
    if (r == 6 && !scope_.ints.empty()) return rng_.pick(scope_.ints) + " % " + small_positive(3) + " == 0";
    if (r == 7) return comparison() + (rng_.chance(0.5) ? " and " : " or ") + comparison();
    if (r == 8) return "not " + comparison();
    if (!scope_.strs.empty()) return "len(" + rng_.pick(scope_.strs) + ") > " + std::to_string(rng_.uniform(0, 3));
    return comparison();
  }

  void statement(int depth) {
    const bool can_nest = depth < cfg_.max_nesting;
    // assign, aug, print, if, for, while, str, list, index, expr, break/continue
    std::vector<int> w = {24, 14, 8, can_nest ? 14 : 0, can_nest && loop_depth_ < 2 ? 8 : 0,
                          can_nest && loop_depth_ < 2 ? 6 : 0, 5, 4, scope_.lists.empty() ? 0 : 4, 2,
                          in_loop() && can_nest ? 6 : 0};
    switch (rng_.weighted(w)) {
      case 0: assign(depth); break;
      case 1: aug_assign(depth); break;
      case 2: print(depth); break;
      case 3: if_stmt(depth); break;
      case 4: for_stmt(depth); break;
      case 5: while_stmt(depth); break;
      case 6: str_assign(depth); break;
      case 7: list_assign(depth); break;
      case 8: index_assign(depth); break;
      case 9: expr_stmt(depth); break;
      default: jump(depth); break;
    }
  }

  void block(int depth, std::int64_t lo = 1, std::int64_t hi = 3) {
    const auto n = rng_.uniform(lo, hi);
    for (std::int64_t i = 0; i < n; ++i) statement(depth);
  }

  void assign(int depth) {
    const std::string expr = int_expr();
    const std::string target = int_target();
    if (types_.count(target) && types_[target] != VarType::Int) return print(depth);
    emit(depth, target + " = " + expr);
    declare(target, VarType::Int);
    scope_.add(scope_.ints, target);
  }

  void aug_assign(int depth) {
    auto targets = assignable_ints();
    if (targets.empty()) return assign(depth);
    const std::string& t = rng_.pick(targets);
    const auto r = rng_.uniform(0, 9);
    if (r < 6) {
      emit(depth, t + (rng_.chance(0.6) ? " += " : " -= ") + int_expr(1));
    } else if (r == 6 && !in_loop()) {
      emit(depth, t + " *= " + small_positive(3));
    } else if (r <= 8) {
      emit(depth, t + " //= " + small_positive(4));
    } else {
      emit(depth, t + " %= " + small_positive(7));
    }
  }

  void print(int depth) {
    const auto r = rng_.uniform(0, 3);
    if (r == 0 && !scope_.strs.empty()) {
      emit(depth, "print(" + rng_.pick(scope_.strs) + ")");
    } else if (r == 1 && !scope_.ints.empty()) {
      emit(depth, "print(" + rng_.pick(kStrLiterals) + ", " + rng_.pick(scope_.ints) + ")");
    } else if (r == 2 && !scope_.lists.empty()) {
      emit(depth, "print(" + rng_.pick(scope_.lists) + ")");
    } else {
      emit(depth, "print(" + int_expr(1) + ")");
    }
  }

  void str_assign(int depth) {
    std::string target;
    if (!scope_.strs.empty() && rng_.chance(0.5)) {
      target = rng_.pick(scope_.strs);
    } else if (auto f = fresh(kStrNames)) {
      target = *f;
    } else {
      return print(depth);
    }
    std::string rhs = rng_.pick(kStrLiterals);
    if (scope_.strs.size() > 0 && rng_.chance(0.4)) {
      rhs = rng_.pick(scope_.strs) + " + " + rng_.pick(kStrLiterals);
    } else if (!scope_.ints.empty() && rng_.chance(0.2)) {
      rhs = "str(" + rng_.pick(scope_.ints) + ")";
    }
    emit(depth, target + " = " + rhs);
    declare(target, VarType::Str);
    scope_.add(scope_.strs, target);
  }

  void list_assign(int depth) {
    auto name = fresh(kListNames);
    if (!name) return index_assign(depth);
    const auto len = rng_.uniform(cfg_.list_length_range);
    std::string text = *name + " = [";
    for (std::int64_t i = 0; i < len; ++i) text += (i ? ", " : "") + literal();
    emit(depth, text + "]");
    declare(*name, VarType::List);
    list_len_[*name] = len;
    scope_.add(scope_.lists, *name);
  }

  void index_assign(int depth) {
    if (scope_.lists.empty()) return assign(depth);
    const std::string& l = rng_.pick(scope_.lists);
    emit(depth, l + "[" + std::to_string(rng_.uniform(0, list_len_[l] - 1)) + "] = " + int_expr(1));
  }

  void expr_stmt(int depth) {
    if (!scope_.strs.empty() && rng_.chance(0.5)) {
      emit(depth, "len(" + rng_.pick(scope_.strs) + ")");
    } else {
      emit(depth, "abs(" + int_atom() + ")");
    }
  }

  void jump(int depth) {
    emit(depth, "if " + condition() + ":");
    const Scope saved = scope_;
    if (rng_.chance(0.3)) assign(depth + 1);
    emit(depth + 1, rng_.chance(0.5) ? "break" : "continue");
    scope_ = saved;
  }

  void if_stmt(int depth) {
    const Scope before = scope_;
    std::vector<Scope> outs;
    emit(depth, "if " + condition() + ":");
    block(depth + 1);
    outs.push_back(scope_);
    const auto elifs = rng_.weighted({6, 3, 1});
    for (std::size_t i = 0; i < elifs; ++i) {
      scope_ = before;
      emit(depth, "elif " + condition() + ":");
      block(depth + 1);
      outs.push_back(scope_);
    }
    const bool has_else = rng_.chance(0.5);
    scope_ = before;
    if (has_else) {
      emit(depth, "else:");
      block(depth + 1);
      outs.push_back(scope_);
    } else {
      outs.push_back(before);
    }
    Scope merged = outs.front();
    for (const Scope& s : outs) {
      merged.ints = intersect(merged.ints, s.ints);
      merged.strs = intersect(merged.strs, s.strs);
      merged.lists = intersect(merged.lists, s.lists);
    }
    scope_ = merged;
  }

  std::string loop_bound() {
    if (!in_loop() && !input_names_.empty() && rng_.chance(0.4)) return rng_.pick(input_names_);
    if (in_loop()) return std::to_string(rng_.uniform(0, 4));
    return std::to_string(rng_.uniform(cfg_.loop_bound_range));
  }

  void for_stmt(int depth) {
    const std::string var = kLoopVars[static_cast<std::size_t>(loop_depth_)];
    const std::string bound = loop_bound();
    std::string range;
    const auto r = rng_.uniform(0, 9);
    if (r < 6) {
      range = "range(" + bound + ")";
    } else if (r < 8) {
      range = "range(" + std::to_string(rng_.uniform(0, 3)) + ", " + bound + ")";
    } else if (r == 8) {
      range = "range(" + bound + ", 0, -1)";
    } else {
      range = "range(0, " + bound + ", 2)";
    }
    if (types_.count(var) && types_[var] != VarType::Int) return assign(depth);
    emit(depth, "for " + var + " in " + range + ":");
    const Scope before = scope_;
    const bool bound_was_protected = protected_.count(bound) > 0;
    declare(var, VarType::Int);
    scope_.add(scope_.ints, var);
    protected_.insert(var);
    protected_.insert(bound);
    ++loop_depth_;
    block(depth + 1);
    --loop_depth_;
    protected_.erase(var);
    if (!bound_was_protected) protected_.erase(bound);
    scope_ = before;
  }

  void while_stmt(int depth) {
    const std::string counter = kCounters[static_cast<std::size_t>(loop_depth_)];
    if (types_.count(counter) && types_[counter] != VarType::Int) return assign(depth);
    const std::string bound = loop_bound();
    emit(depth, counter + " = 0");
    declare(counter, VarType::Int);
    scope_.add(scope_.ints, counter);
    const Scope before = scope_;
    const bool bound_was_protected = protected_.count(bound) > 0;
    protected_.insert(counter);
    protected_.insert(bound);
    ++loop_depth_;
    if (rng_.chance(0.25)) {
      emit(depth, "while True:");
      emit(depth + 1, counter + " += 1");
      emit(depth + 1, "if " + counter + " > " + bound + ":");
      emit(depth + 2, "break");
    } else {
      emit(depth, "while " + counter + " < " + bound + ":");
      emit(depth + 1, counter + " += 1");
    }
    block(depth + 1, 1, 2);
    --loop_depth_;
    protected_.erase(counter);
    if (!bound_was_protected) protected_.erase(bound);
    scope_ = before;
  }

  // Bug statements. The injected line must be where the program crashes.
  void place_bug(ErrorKind kind) {
    int depth = 0;
    const auto placement = rng_.uniform(0, 9);
    Scope saved = scope_;
    const bool wrapped = placement >= 6;
    if (placement >= 6 && placement <= 7 && cfg_.max_nesting > 0) {
      emit(0, "if " + condition() + ":");
      depth = 1;
    } else if (placement >= 8 && cfg_.max_nesting > 0) {
      emit(0, "for i in range(" + std::to_string(rng_.uniform(1, 4)) + "):");
      declare("i", VarType::Int);
      scope_.add(scope_.ints, "i");
      protected_.insert("i");
      depth = 1;
    }
    bug_statement(kind, depth);
    protected_.erase("i");
    if (wrapped) scope_ = saved;
  }

  void bug_statement(ErrorKind kind, int depth) {
    std::string target = int_target();
    if (types_.count(target) && types_[target] != VarType::Int) target = "x";
    auto mark = [&](const std::string& text) {
      emit(depth, text);
      bug_line_ = static_cast<int>(lines_.size());
    };
    switch (kind) {
      case ErrorKind::ZeroDivision: {
        std::string divisor;
        if (!input_names_.empty() && rng_.chance(0.8)) {
          divisor = rng_.pick(input_names_);
        } else if (auto name = fresh(kInputNames)) {
          divisor = *name;
          declare(divisor, VarType::Int);
          input_names_.push_back(divisor);
        } else {
          divisor = rng_.pick(input_names_);
        }
        inputs_[divisor] = Value(0);
        const char* op = rng_.pick(std::vector<const char*>{" // ", " % ", " / "});
        mark(target + " = " + int_atom() + op + divisor);
        break;
      }
      case ErrorKind::TypeMismatch: {
        std::string s;
        if (!scope_.strs.empty()) {
          s = rng_.pick(scope_.strs);
        } else {
          s = rng_.pick(kStrLiterals);
        }
        const auto r = rng_.uniform(0, 3);
        if (r == 0) mark(target + " = " + s + " + " + int_atom());
        if (r == 1) mark(target + " = " + int_atom() + " - " + s);
        if (r == 2) mark("print(" + s + " * " + s + ")");
        if (r == 3) {
          mark("if " + s + " > " + literal() + ":");
          emit(depth + 1, target + " = 1");
        }
        break;
      }
      case ErrorKind::IndexOutOfRange: {
        std::string l;
        std::int64_t len;
        if (!scope_.lists.empty()) {
          l = rng_.pick(scope_.lists);
          len = list_len_[l];
        } else if (auto name = fresh(kListNames)) {
          l = *name;
          len = rng_.uniform(cfg_.list_length_range);
          std::string text = l + " = [";
          for (std::int64_t i = 0; i < len; ++i) text += (i ? ", " : "") + literal();
          emit(depth, text + "]");
          declare(l, VarType::List);
          list_len_[l] = len;
        } else {
          l = "[1, 2]";
          len = 2;
        }
        const std::string idx = rng_.chance(0.25) ? "-" + std::to_string(len + rng_.uniform(1, 2))
                                                  : std::to_string(len + rng_.uniform(0, 2));
        if (rng_.chance(0.3) && l.front() != '[') {
          mark(l + "[" + idx + "] = " + int_atom());
        } else {
          mark(target + " = " + l + "[" + idx + "]");
        }
        break;
      }
      case ErrorKind::NameError: {
        std::string name;
        if (auto f = fresh(kIntNames); f && *f != target) {
          name = *f;
        } else {
          name = rng_.pick(std::vector<std::string>{"result", "tmp"});
        }
        // Reserve the name so nothing later defines it under another type.
        declare(name, VarType::Int);
        const auto r = rng_.uniform(0, 2);
        if (r == 0) mark(target + " = " + name + " + " + literal());
        if (r == 1) mark("print(" + name + ")");
        if (r == 2) mark(name + " += " + literal());
        break;
      }
      case ErrorKind::ValueError: {
        if (rng_.chance(0.7)) {
          mark(target + " = int(" + rng_.pick(kBadIntLiterals) + ")");
        } else {
          mark(target + " = " + int_atom() + " / " + std::to_string(rng_.uniform(3, 9)));
        }
        break;
      }
    }
    if (!types_.count(target)) {
      declare(target, VarType::Int);
    }
  }

  const GenConfig& cfg_;
  Rng& rng_;
  std::vector<std::string> lines_;
  std::map<std::string, VarType> types_;
  std::map<std::string, std::int64_t> list_len_;
  std::set<std::string> protected_;
  Scope scope_;
  int loop_depth_ = 0;
  int bug_line_ = 0;
  InputBindings inputs_;
  std::vector<std::string> input_names_;
};

bool acceptable(const Draft& d, const GenConfig& config) {
  try {
    Ast ast = parse(d.source);
    Cfg cfg = build_cfg(ast, d.inputs);
    if (cfg.size() > config.max_nodes) return false;
    ExecutionTrace t = execute(ast, cfg, d.inputs, config.step_limit);
    if (!d.bug) return t.status == TraceStatus::Normal;
    if (t.status != TraceStatus::Crashed || t.error_kind != d.bug) return false;
    if (cfg.line_of(*t.crash_node) != d.bug_line) return false;
    // Crashing on a later visit (a later loop iteration) is not accepted.
    return std::count(t.walk.begin(), t.walk.end(), *t.crash_node) == 1;
  } catch (const ParseError&) {
    return false;
  } catch (const CfgError&) {
    return false;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

std::string record_id(std::uint64_t seed, std::size_t index) {
  std::ostringstream out;
  out << "gen-" << seed << "-" << index;
  return out.str();
}

DatasetRecord generate_one(const GenConfig& config, std::size_t index) {
  Rng rng(splitmix64(config.seed ^ splitmix64(index)));
  ProgramGenerator gen(config, rng);
  // Decided once per record so that rejected drafts do not skew the rate.
  std::optional<ErrorKind> bug;
  if (rng.chance(config.bug_injection_rate)) bug = static_cast<ErrorKind>(rng.uniform(0, 4));
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Draft d = gen.draft(bug);
    if (acceptable(d, config)) {
      return label_program(record_id(config.seed, index), std::move(d.source), std::move(d.inputs));
    }
  }
  throw GenerationExhausted("record " + std::to_string(index) + ": 1000 consecutive rejected drafts");
}

}  // namespace

DatasetRecord label_program(std::string id, std::string source, InputBindings inputs, std::size_t step_limit) {
  DatasetRecord r;
  r.id = std::move(id);
  r.source = std::move(source);
  r.inputs = std::move(inputs);
  Ast ast = parse(r.source);
  r.cfg = build_cfg(ast, r.inputs);
  ExecutionTrace t = execute(ast, r.cfg, r.inputs, step_limit);
  r.covered_nodes = t.covered_nodes;
  std::sort(r.covered_nodes.begin(), r.covered_nodes.end());
  r.covered_lines.assign(t.covered_lines.begin(), t.covered_lines.end());
  r.status = t.status;
  r.crash_node = t.crash_node;
  if (t.crash_node) {
    if (auto line = r.cfg.line_of(*t.crash_node)) r.crash_line = *line;
  }
  r.error_kind = t.error_kind;
  return r;
}

std::vector<DatasetRecord> generate(const GenConfig& config, unsigned jobs) {
  config.validate();
  std::vector<DatasetRecord> out(config.count);
  parallel_for(config.count, jobs, [&](std::size_t i) { out[i] = generate_one(config, i); });
  return out;
}

Json record_to_json(const DatasetRecord& r) {
  Json j{{"id", r.id},
         {"source", r.source},
         {"inputs", inputs_to_json(r.inputs)},
         {"cfg", cfg_to_json(r.cfg)},
         {"covered_nodes", r.covered_nodes},
         {"covered_lines", r.covered_lines},
         {"status", to_string(r.status)},
         {"crash_node", nullptr},
         {"crash_line", nullptr},
         {"error_kind", nullptr}};
  if (r.crash_node) j["crash_node"] = *r.crash_node;
  if (r.crash_line) j["crash_line"] = *r.crash_line;
  if (r.error_kind) j["error_kind"] = to_string(*r.error_kind);
  return j;
}

DatasetRecord record_from_json(const Json& j) {
  DatasetRecord r;
  try {
    r.id = j.at("id").get<std::string>();
    r.source = j.at("source").get<std::string>();
    r.inputs = inputs_from_json(j.at("inputs"));
    r.covered_nodes = j.at("covered_nodes").get<std::vector<int>>();
    r.covered_lines = j.at("covered_lines").get<std::vector<int>>();
    r.status = trace_status_from_string(j.at("status").get<std::string>());
    if (!j.at("crash_node").is_null()) r.crash_node = j.at("crash_node").get<int>();
    if (!j.at("crash_line").is_null()) r.crash_line = j.at("crash_line").get<int>();
    if (!j.at("error_kind").is_null()) r.error_kind = error_kind_from_string(j.at("error_kind").get<std::string>());
    r.cfg = build_cfg(parse(r.source), r.inputs);
    if (cfg_to_json(r.cfg) != j.at("cfg")) throw DataError("stored cfg does not match the source");
  } catch (const Json::exception& e) {
    throw DataError(e.what());
  } catch (const ParseError& e) {
    throw DataError(std::string("source does not parse: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
  const int n = static_cast<int>(r.cfg.size());
  for (int node : r.covered_nodes) {
    if (node < 0 || node >= n) throw DataError("covered node " + std::to_string(node) + " out of range");
  }
  if (r.crash_node && (*r.crash_node < 0 || *r.crash_node >= n)) throw DataError("crash_node out of range");
  return r;
}

bool operator==(const DatasetRecord& a, const DatasetRecord& b) { return record_to_json(a) == record_to_json(b); }

void write_jsonl(std::ostream& out, const std::vector<DatasetRecord>& records) {
  for (const auto& r : records) out << dump_line(record_to_json(r));
}

void write_jsonl(const std::filesystem::path& path, const std::vector<DatasetRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  write_jsonl(out, records);
  if (!out) throw DataError("write to " + path.string() + " failed");
}

std::vector<DatasetRecord> read_jsonl(std::istream& in) {
  std::vector<DatasetRecord> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(record_from_json(Json::parse(line)));
    } catch (const Json::exception& e) {
      throw DataError("line " + std::to_string(line_no) + ": malformed record: " + e.what());
    } catch (const DataError& e) {
      throw DataError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<DatasetRecord> read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return read_jsonl(in);
}

std::pair<std::vector<DatasetRecord>, std::vector<DatasetRecord>> split(std::vector<DatasetRecord> records,
                                                                          double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw std::invalid_argument("split fraction must be in (0, 1)");
  Rng rng(splitmix64(seed));
  // Fisher-Yates with the toolchain-independent generator.
  for (std::size_t i = records.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(i) - 1));
    std::swap(records[i - 1], records[j]);
  }
  const auto n_train = static_cast<std::size_t>(static_cast<double>(records.size()) * fraction);
  std::vector<DatasetRecord> train(std::make_move_iterator(records.begin()),
                                   std::make_move_iterator(records.begin() + static_cast<std::ptrdiff_t>(n_train)));
  std::vector<DatasetRecord> test(std::make_move_iterator(records.begin() + static_cast<std::ptrdiff_t>(n_train)),
                                  std::make_move_iterator(records.end()));
  return {std::move(train), std::move(test)};
}

}  // namespace flowcov
