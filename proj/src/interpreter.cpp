#include "flowcov/interpreter.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "flowcov/frontend.hpp"

namespace flowcov {

std::string to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroDivision: return "zero-division";
    case ErrorKind::TypeMismatch: return "type-mismatch";
    case ErrorKind::IndexOutOfRange: return "index-out-of-range";
    case ErrorKind::NameError: return "name-error";
    case ErrorKind::ValueError: return "value-error";
  }
  return "unknown";
}

std::string to_string(TraceStatus status) {
  switch (status) {
    case TraceStatus::Normal: return "normal";
    case TraceStatus::Crashed: return "crashed";
    case TraceStatus::StepLimitExceeded: return "step-limit-exceeded";
  }
  return "unknown";
}

ErrorKind error_kind_from_string(std::string_view text) {
  for (ErrorKind k : {ErrorKind::ZeroDivision, ErrorKind::TypeMismatch, ErrorKind::IndexOutOfRange,
                      ErrorKind::NameError, ErrorKind::ValueError}) {
    if (to_string(k) == text) return k;
  }
  throw std::invalid_argument("unknown error kind '" + std::string(text) + "'");
}

TraceStatus trace_status_from_string(std::string_view text) {
  for (TraceStatus s : {TraceStatus::Normal, TraceStatus::Crashed, TraceStatus::StepLimitExceeded}) {
    if (to_string(s) == text) return s;
  }
  throw std::invalid_argument("unknown trace status '" + std::string(text) + "'");
}

bool ExecutionTrace::covers(int node) const {
  return std::find(covered_nodes.begin(), covered_nodes.end(), node) != covered_nodes.end();
}

namespace {

constexpr std::size_t kMaxSequenceLength = 1'000'000;

struct RuntimeFault {
  ErrorKind kind;
  std::string message;
};

[[noreturn]] void raise(ErrorKind kind, std::string message) { throw RuntimeFault{kind, std::move(message)}; }

std::int64_t checked(bool overflowed, std::int64_t value) {
  if (overflowed) raise(ErrorKind::ValueError, "integer overflow");
  return value;
}

std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  const bool overflowed = __builtin_add_overflow(a, b, &r);
  return checked(overflowed, r);
}
std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  const bool overflowed = __builtin_sub_overflow(a, b, &r);
  return checked(overflowed, r);
}
std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  const bool overflowed = __builtin_mul_overflow(a, b, &r);
  return checked(overflowed, r);
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  if (b == 0) raise(ErrorKind::ZeroDivision, "integer division or modulo by zero");
  if (a == std::numeric_limits<std::int64_t>::min() && b == -1) raise(ErrorKind::ValueError, "integer overflow");
  std::int64_t q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t b) {
  if (b == 0) raise(ErrorKind::ZeroDivision, "integer division or modulo by zero");
  if (b == -1) return 0;
  std::int64_t r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) r += b;
  return r;
}

std::int64_t power(std::int64_t base, std::int64_t exp) {
  if (exp < 0) raise(ErrorKind::ValueError, "negative exponent yields a non-integer");
  std::int64_t result = 1;
  while (exp > 0) {
    if (exp & 1) result = mul(result, base);
    exp >>= 1;
    if (exp > 0) base = mul(base, base);
  }
  return result;
}

bool truthy(const Value& v) {
  if (v.is_bool()) return v.as_bool();
  if (v.is_int()) return v.as_int() != 0;
  if (v.is_str()) return !v.as_str().empty();
  return !v.as_list()->empty();
}

[[noreturn]] void operand_mismatch(const std::string& op, const Value& a, const Value& b) {
  raise(ErrorKind::TypeMismatch,
        "unsupported operand type(s) for " + op + ": '" + a.type_name() + "' and '" + b.type_name() + "'");
}

std::size_t checked_repeat(std::size_t unit, std::int64_t times) {
  if (times <= 0 || unit == 0) return 0;
  if (static_cast<std::uint64_t>(times) > kMaxSequenceLength / unit) {
    raise(ErrorKind::ValueError, "sequence too large");
  }
  return static_cast<std::size_t>(times);
}

Value binary_op(const std::string& op, const Value& a, const Value& b) {
  if (op == "+") {
    if (a.is_numeric() && b.is_numeric()) return Value(add(a.as_int(), b.as_int()));
    if (a.is_str() && b.is_str()) return Value(a.as_str() + b.as_str());
    if (a.is_list() && b.is_list()) {
      List joined = *a.as_list();
      joined.insert(joined.end(), b.as_list()->begin(), b.as_list()->end());
      return Value::list(std::move(joined));
    }
    operand_mismatch(op, a, b);
  }
  if (op == "*") {
    if (a.is_numeric() && b.is_numeric()) return Value(mul(a.as_int(), b.as_int()));
    const Value* seq = a.is_numeric() ? &b : &a;
    const Value* count = a.is_numeric() ? &a : &b;
    if (count->is_numeric() && seq->is_str()) {
      std::string out;
      const std::size_t n = checked_repeat(seq->as_str().size(), count->as_int());
      for (std::size_t i = 0; i < n; ++i) out += seq->as_str();
      return Value(std::move(out));
    }
    if (count->is_numeric() && seq->is_list()) {
      List out;
      const std::size_t n = checked_repeat(seq->as_list()->size(), count->as_int());
      for (std::size_t i = 0; i < n; ++i) out.insert(out.end(), seq->as_list()->begin(), seq->as_list()->end());
      return Value::list(std::move(out));
    }
    operand_mismatch(op, a, b);
  }
  if (!a.is_numeric() || !b.is_numeric()) operand_mismatch(op, a, b);
  const std::int64_t x = a.as_int();
  const std::int64_t y = b.as_int();
  if (op == "-") return Value(sub(x, y));
  if (op == "//") return Value(floor_div(x, y));
  if (op == "%") return Value(floor_mod(x, y));
  if (op == "**") return Value(power(x, y));
  if (op == "/") {
    if (y == 0) raise(ErrorKind::ZeroDivision, "division by zero");
    if (floor_mod(x, y) != 0) raise(ErrorKind::ValueError, "inexact division has no integer result");
    return Value(floor_div(x, y));
  }
  throw std::logic_error("unknown binary operator " + op);
}

int compare_order(const std::string& op, const Value& a, const Value& b) {
  if (a.is_numeric() && b.is_numeric()) return (a.as_int() > b.as_int()) - (a.as_int() < b.as_int());
  if (a.is_str() && b.is_str()) return a.as_str().compare(b.as_str()) < 0 ? -1 : (a.as_str() == b.as_str() ? 0 : 1);
  if (a.is_list() && b.is_list()) {
    const List& x = *a.as_list();
    const List& y = *b.as_list();
    for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
      if (x[i] == y[i]) continue;
      return compare_order(op, x[i], y[i]);
    }
    return (x.size() > y.size()) - (x.size() < y.size());
  }
  raise(ErrorKind::TypeMismatch,
        "'" + op + "' not supported between instances of '" + a.type_name() + "' and '" + b.type_name() + "'");
}

bool compare(const std::string& op, const Value& a, const Value& b) {
  if (op == "==") return a == b;
  if (op == "!=") return !(a == b);
  const int c = compare_order(op, a, b);
  if (op == "<") return c < 0;
  if (op == "<=") return c <= 0;
  if (op == ">") return c > 0;
  return c >= 0;
}

std::size_t resolve_index(const Value& index, std::size_t size, const char* what) {
  if (!index.is_numeric()) {
    raise(ErrorKind::TypeMismatch, std::string(what) + " indices must be integers, not " + index.type_name());
  }
  std::int64_t i = index.as_int();
  const auto n = static_cast<std::int64_t>(size);
  if (i < 0) i += n;
  if (i < 0 || i >= n) raise(ErrorKind::IndexOutOfRange, std::string(what) + " index out of range");
  return static_cast<std::size_t>(i);
}

std::vector<std::int64_t> range_bounds(const std::vector<Value>& args) {
  for (const Value& v : args) {
    if (!v.is_numeric()) raise(ErrorKind::TypeMismatch, "'" + v.type_name() + "' object cannot be interpreted as an integer");
  }
  std::int64_t start = 0, stop = 0, step = 1;
  if (args.size() == 1) {
    stop = args[0].as_int();
  } else if (args.size() >= 2) {
    start = args[0].as_int();
    stop = args[1].as_int();
    if (args.size() == 3) step = args[2].as_int();
  }
  if (args.empty() || args.size() > 3) raise(ErrorKind::TypeMismatch, "range expected 1 to 3 arguments");
  if (step == 0) raise(ErrorKind::ValueError, "range() arg 3 must not be zero");
  return {start, stop, step};
}

class Machine {
 public:
  explicit Machine(const Cfg& cfg) : cfg_(cfg) {}

  ExecutionTrace run(std::size_t step_limit) {
    ExecutionTrace trace;
    std::vector<bool> seen(cfg_.size(), false);
    int current = cfg_.begin_index();
    std::size_t visits = 0;
    while (true) {
      if (visits == step_limit) {
        trace.status = TraceStatus::StepLimitExceeded;
        break;
      }
      ++visits;
      trace.walk.push_back(current);
      if (!seen[current]) {
        seen[current] = true;
        trace.covered_nodes.push_back(current);
        if (auto line = cfg_.line_of(current)) trace.covered_lines.insert(*line);
      }
      if (current == cfg_.exit_index()) {
        trace.status = TraceStatus::Normal;
        break;
      }
      try {
        current = step(current);
      } catch (const RuntimeFault& fault) {
        trace.status = TraceStatus::Crashed;
        trace.crash_node = current;
        trace.error_kind = fault.kind;
        trace.error_message = fault.message;
        break;
      }
    }
    trace.final_env.insert(env_.begin(), env_.end());
    trace.output = std::move(output_);
    return trace;
  }

 private:
  struct RangeCursor {
    std::int64_t start = 0;
    std::int64_t stop = 0;
    std::int64_t step = 1;
    std::int64_t position = 0;
  };

  int next_plain(int node) const {
    const auto& succ = cfg_.forward_successors(node);
    if (!succ.empty()) return succ.front();
    if (auto back = cfg_.backward_target(node)) return *back;
    throw std::logic_error("node " + std::to_string(node) + " has no outgoing edge");
  }

  int step(int node) {
    const CfgNode& n = cfg_.node(node);
    const NodeAction& a = n.action;
    switch (a.kind) {
      case ActionKind::None:
      case ActionKind::Nop:
      case ActionKind::Break:
      case ActionKind::Continue:
        break;
      case ActionKind::Input:
        env_[a.name] = copy_value(a.input);
        break;
      case ActionKind::Assign:
        store(a.target, eval(a.value));
        break;
      case ActionKind::AugAssign:
        augmented(a);
        break;
      case ActionKind::Print: {
        std::string line;
        for (std::size_t i = 0; i < a.args.size(); ++i) {
          if (i) line += ' ';
          line += to_display(eval(a.args[i]));
        }
        output_.push_back(std::move(line));
        break;
      }
      case ActionKind::Eval:
        eval(a.value);
        break;
      case ActionKind::Test:
        return cfg_.branch_successor(node, truthy(eval(a.value)) ? Branch::True : Branch::False);
      case ActionKind::RangeInit: {
        std::vector<Value> args;
        for (const auto& e : a.args) args.push_back(eval(e));
        auto bounds = range_bounds(args);
        cursors_[a.loop_id] = RangeCursor{bounds[0], bounds[1], bounds[2], 0};
        break;
      }
      case ActionKind::RangeTest: {
        RangeCursor& c = cursors_.at(a.loop_id);
        const std::int64_t value = add(c.start, mul(c.position, c.step));
        const bool inside = c.step > 0 ? value < c.stop : value > c.stop;
        if (inside) env_[a.name] = Value(value);
        return cfg_.branch_successor(node, inside ? Branch::True : Branch::False);
      }
      case ActionKind::RangeStep:
        ++cursors_.at(a.loop_id).position;
        break;
    }
    return next_plain(node);
  }

  static Value copy_value(const Value& v) {
    if (!v.is_list()) return v;
    List items;
    for (const Value& item : *v.as_list()) items.push_back(copy_value(item));
    return Value::list(std::move(items));
  }

  Value lookup(const std::string& name) const {
    auto it = env_.find(name);
    if (it == env_.end()) raise(ErrorKind::NameError, "name '" + name + "' is not defined");
    return it->second;
  }

  void store(const ExprPtr& target, Value v) {
    if (target->kind == ExprKind::Name) {
      env_[target->name] = std::move(v);
      return;
    }
    Value container = eval(target->operands[0]);
    Value index = eval(target->operands[1]);
    if (!container.is_list()) {
      raise(ErrorKind::TypeMismatch, "'" + container.type_name() + "' object does not support item assignment");
    }
    List& items = *container.as_list();
    items[resolve_index(index, items.size(), "list assignment")] = std::move(v);
  }

  void augmented(const NodeAction& a) {
    const std::string op = a.op.substr(0, a.op.size() - 1);
    if (a.target->kind == ExprKind::Name) {
      Value current = lookup(a.target->name);
      Value rhs = eval(a.value);
      if (op == "+" && current.is_list() && rhs.is_list()) {
        List extra = *rhs.as_list();
        current.as_list()->insert(current.as_list()->end(), extra.begin(), extra.end());
        return;
      }
      env_[a.target->name] = binary_op(op, current, rhs);
      return;
    }
    Value container = eval(a.target->operands[0]);
    Value index = eval(a.target->operands[1]);
    Value current = subscript(container, index);
    Value rhs = eval(a.value);
    if (!container.is_list()) {
      raise(ErrorKind::TypeMismatch, "'" + container.type_name() + "' object does not support item assignment");
    }
    List& items = *container.as_list();
    items[resolve_index(index, items.size(), "list assignment")] = binary_op(op, current, rhs);
  }

  static Value subscript(const Value& container, const Value& index) {
    if (container.is_list()) {
      const List& items = *container.as_list();
      return items[resolve_index(index, items.size(), "list")];
    }
    if (container.is_str()) {
      const std::string& s = container.as_str();
      return Value(std::string(1, s[resolve_index(index, s.size(), "string")]));
    }
    raise(ErrorKind::TypeMismatch, "'" + container.type_name() + "' object is not subscriptable");
  }

  Value call(const Expr& e) {
    std::vector<Value> args;
    for (const auto& arg : e.operands) args.push_back(eval(arg));
    auto arity = [&](std::size_t n) {
      if (args.size() != n) {
        raise(ErrorKind::TypeMismatch,
              e.name + "() takes exactly " + std::to_string(n) + " argument(s) (" + std::to_string(args.size()) + " given)");
      }
    };
    if (e.name == "len") {
      arity(1);
      if (args[0].is_str()) return Value(static_cast<std::int64_t>(args[0].as_str().size()));
      if (args[0].is_list()) return Value(static_cast<std::int64_t>(args[0].as_list()->size()));
      raise(ErrorKind::TypeMismatch, "object of type '" + args[0].type_name() + "' has no len()");
    }
    if (e.name == "abs") {
      arity(1);
      if (!args[0].is_numeric()) raise(ErrorKind::TypeMismatch, "bad operand type for abs(): '" + args[0].type_name() + "'");
      const std::int64_t v = args[0].as_int();
      return Value(v < 0 ? sub(0, v) : v);
    }
    if (e.name == "str") {
      if (args.empty()) return Value(std::string());
      arity(1);
      return Value(to_display(args[0]));
    }
    if (e.name == "int") {
      if (args.empty()) return Value(std::int64_t{0});
      arity(1);
      if (args[0].is_numeric()) return Value(args[0].as_int());
      if (!args[0].is_str()) {
        raise(ErrorKind::TypeMismatch, "int() argument must be a string or a number, not '" + args[0].type_name() + "'");
      }
      return Value(parse_int(args[0].as_str()));
    }
    if (e.name == "range") {
      auto b = range_bounds(args);
      List items;
      for (std::int64_t v = b[0]; b[2] > 0 ? v < b[1] : v > b[1]; v = add(v, b[2])) {
        if (items.size() >= kMaxSequenceLength) raise(ErrorKind::ValueError, "range too large");
        items.emplace_back(v);
      }
      return Value::list(std::move(items));
    }
    throw std::logic_error("unknown builtin " + e.name);
  }

  static std::int64_t parse_int(const std::string& text) {
    std::size_t b = text.find_first_not_of(" \t\n");
    std::size_t e = text.find_last_not_of(" \t\n");
    auto invalid = [&]() { raise(ErrorKind::ValueError, "invalid literal for int(): '" + text + "'"); };
    if (b == std::string::npos) invalid();
    std::string body = text.substr(b, e - b + 1);
    bool negative = false;
    std::size_t i = 0;
    if (body[0] == '+' || body[0] == '-') {
      negative = body[0] == '-';
      i = 1;
    }
    if (i >= body.size()) invalid();
    std::int64_t value = 0;
    for (; i < body.size(); ++i) {
      if (body[i] < '0' || body[i] > '9') invalid();
      value = add(mul(value, 10), body[i] - '0');
    }
    return negative ? -value : value;
  }

  Value eval(const ExprPtr& ptr) {
    const Expr& e = *ptr;
    switch (e.kind) {
      case ExprKind::IntLiteral: return Value(e.int_value);
      case ExprKind::BoolLiteral: return Value(e.bool_value);
      case ExprKind::StringLiteral: return Value(e.str_value);
      case ExprKind::ListLiteral: {
        List items;
        for (const auto& item : e.operands) items.push_back(eval(item));
        return Value::list(std::move(items));
      }
      case ExprKind::Name: return lookup(e.name);
      case ExprKind::BinaryOp: {
        Value a = eval(e.operands[0]);
        Value b = eval(e.operands[1]);
        return binary_op(e.op, a, b);
      }
      case ExprKind::UnaryOp: {
        Value v = eval(e.operands[0]);
        if (e.op == "not") return Value(!truthy(v));
        if (!v.is_numeric()) raise(ErrorKind::TypeMismatch, "bad operand type for unary " + e.op + ": '" + v.type_name() + "'");
        return Value(e.op == "-" ? sub(0, v.as_int()) : v.as_int());
      }
      case ExprKind::Compare: {
        Value left = eval(e.operands[0]);
        for (std::size_t i = 0; i < e.ops.size(); ++i) {
          Value right = eval(e.operands[i + 1]);
          if (!compare(e.ops[i], left, right)) return Value(false);
          left = std::move(right);
        }
        return Value(true);
      }
      case ExprKind::BoolOp: {
        Value v;
        for (const auto& operand : e.operands) {
          v = eval(operand);
          if (truthy(v) == (e.op == "or")) return v;
        }
        return v;
      }
      case ExprKind::Index: {
        Value container = eval(e.operands[0]);
        Value index = eval(e.operands[1]);
        return subscript(container, index);
      }
      case ExprKind::Call: return call(e);
    }
    throw std::logic_error("unknown expression kind");
  }

  const Cfg& cfg_;
  std::unordered_map<std::string, Value> env_;
  std::unordered_map<int, RangeCursor> cursors_;
  std::vector<std::string> output_;
};

}  // namespace

ExecutionTrace execute(const Cfg& cfg, std::size_t step_limit) {
  if (!cfg.executable()) throw std::invalid_argument("CFG carries no executable actions");
  if (step_limit == 0) throw std::invalid_argument("step limit must be at least 1");
  return Machine(cfg).run(step_limit);
}

ExecutionTrace execute(const Ast& ast, const Cfg& cfg, const InputBindings& inputs, std::size_t step_limit) {
  if (cfg.source_hash() != ast.source_hash) throw std::invalid_argument("CFG was not built from this AST");
  InputBindings injected;
  for (const CfgNode& node : cfg.nodes()) {
    if (node.action.kind == ActionKind::Input) injected.emplace(node.action.name, node.action.input);
  }
  if (!(injected == inputs)) throw std::invalid_argument("CFG was built with different inputs");
  return execute(cfg, step_limit);
}

ExecutionTrace run_source(std::string_view source, const InputBindings& inputs, std::size_t step_limit) {
  Ast ast = parse(source);
  Cfg cfg = build_cfg(ast, inputs);
  return execute(ast, cfg, inputs, step_limit);
}

}  // namespace flowcov
