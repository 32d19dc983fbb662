#include "flowcov/value.hpp"

#include <stdexcept>

#include "flowcov/frontend.hpp"

namespace flowcov {

std::string Value::type_name() const {
  if (is_int()) return "int";
  if (is_bool()) return "bool";
  if (is_str()) return "str";
  return "list";
}

bool operator==(const Value& a, const Value& b) {
  if (a.is_numeric() && b.is_numeric()) return a.as_int() == b.as_int();
  if (a.is_str() && b.is_str()) return a.as_str() == b.as_str();
  if (a.is_list() && b.is_list()) {
    const List& x = *a.as_list();
    const List& y = *b.as_list();
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!(x[i] == y[i])) return false;
    }
    return true;
  }
  return false;
}

std::string repr(const Value& v) {
  if (v.is_str()) {
    std::string out = "'";
    for (char c : v.as_str()) {
      switch (c) {
        case '\'': out += "\\'"; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out.push_back(c);
      }
    }
    return out + "'";
  }
  return to_display(v);
}

std::string to_display(const Value& v) {
  if (v.is_bool()) return v.as_bool() ? "True" : "False";
  if (v.is_int()) return std::to_string(v.as_int());
  if (v.is_str()) return v.as_str();
  std::string out = "[";
  const List& items = *v.as_list();
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += repr(items[i]);
  }
  return out + "]";
}

namespace {

Value literal_value(const Expr& e) {
  switch (e.kind) {
    case ExprKind::IntLiteral: return Value(e.int_value);
    case ExprKind::BoolLiteral: return Value(e.bool_value);
    case ExprKind::StringLiteral: return Value(e.str_value);
    case ExprKind::UnaryOp:
      if (e.op == "-" && e.operands[0]->kind == ExprKind::IntLiteral) return Value(-e.operands[0]->int_value);
      break;
    case ExprKind::ListLiteral: {
      List items;
      for (const auto& item : e.operands) items.push_back(literal_value(*item));
      return Value::list(std::move(items));
    }
    default:
      break;
  }
  throw std::invalid_argument("not a literal");
}

}  // namespace

Value parse_literal(const std::string& text) {
  try {
    return literal_value(*parse_expression(text));
  } catch (const ParseError&) {
    throw std::invalid_argument("not a literal: " + text);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a literal: " + text);
  }
}

}  // namespace flowcov
