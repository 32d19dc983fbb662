#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "flowcov/cfg.hpp"
#include "flowcov/interpreter.hpp"
#include "flowcov/value.hpp"

namespace flowcov {

using Json = nlohmann::json;

/// Malformed or inconsistent data read from disk.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json value_to_json(const Value& v);
Value value_from_json(const Json& j);

Json inputs_to_json(const InputBindings& inputs);
InputBindings inputs_from_json(const Json& j);

std::string to_string(NodeKind kind);
std::string to_string(EdgeDirection dir);
std::string to_string(Branch branch);

/// Structure only (nodes, edges, source hash); actions are not serialized.
Json cfg_to_json(const Cfg& cfg);
Cfg cfg_from_json(const Json& j);

Json trace_to_json(const ExecutionTrace& trace, const Cfg& cfg);

/// Compact dump with sorted keys and a trailing newline.
std::string dump_line(const Json& j);
/// Indented dump with sorted keys and a trailing newline.
std::string dump_pretty(const Json& j);

}  // namespace flowcov
