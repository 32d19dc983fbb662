#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace flowcov {

struct Value;
using List = std::vector<Value>;
using ListPtr = std::shared_ptr<List>;

/// Runtime value of the language: int, bool, str or (shared, mutable) list.
struct Value {
  std::variant<std::int64_t, bool, std::string, ListPtr> data{std::int64_t{0}};

  Value() = default;
  Value(std::int64_t v) : data(v) {}
  Value(int v) : data(std::int64_t{v}) {}
  Value(bool v) : data(v) {}
  Value(std::string v) : data(std::move(v)) {}
  Value(const char* v) : data(std::string(v)) {}
  Value(ListPtr v) : data(std::move(v)) {}

  static Value list(List items) { return Value(std::make_shared<List>(std::move(items))); }

  bool is_int() const { return std::holds_alternative<std::int64_t>(data); }
  bool is_bool() const { return std::holds_alternative<bool>(data); }
  bool is_str() const { return std::holds_alternative<std::string>(data); }
  bool is_list() const { return std::holds_alternative<ListPtr>(data); }
  /// int or bool, which behave as integers in arithmetic.
  bool is_numeric() const { return is_int() || is_bool(); }

  std::int64_t as_int() const { return is_bool() ? std::int64_t{std::get<bool>(data)} : std::get<std::int64_t>(data); }
  bool as_bool() const { return std::get<bool>(data); }
  const std::string& as_str() const { return std::get<std::string>(data); }
  const ListPtr& as_list() const { return std::get<ListPtr>(data); }

  std::string type_name() const;
};

/// Structural equality (lists compare element-wise; 1 == True as in Python).
bool operator==(const Value& a, const Value& b);

/// repr()-style rendering: strings single-quoted, lists bracketed.
std::string repr(const Value& v);
/// str()-style rendering used by print.
std::string to_display(const Value& v);

/// Variable name -> literal value injected as the program's inputs.
using InputBindings = std::map<std::string, Value>;

/// Parses a literal (`3`, `-2`, `True`, `'s'`, `[1, 2]`) into a value.
/// Throws std::invalid_argument for anything that is not a literal.
Value parse_literal(const std::string& text);

}  // namespace flowcov
