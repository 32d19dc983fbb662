#include "flowcov/serialize.hpp"

#include <algorithm>

#include "flowcov/frontend.hpp"

namespace flowcov {

Json value_to_json(const Value& v) {
  if (v.is_bool()) return v.as_bool();
  if (v.is_int()) return v.as_int();
  if (v.is_str()) return v.as_str();
  Json arr = Json::array();
  for (const Value& item : *v.as_list()) arr.push_back(value_to_json(item));
  return arr;
}

Value value_from_json(const Json& j) {
  if (j.is_boolean()) return Value(j.get<bool>());
  if (j.is_number_integer()) return Value(j.get<std::int64_t>());
  if (j.is_string()) return Value(j.get<std::string>());
  if (j.is_array()) {
    List items;
    for (const Json& item : j) items.push_back(value_from_json(item));
    return Value::list(std::move(items));
  }
  throw DataError("unsupported input value " + j.dump());
}

Json inputs_to_json(const InputBindings& inputs) {
  Json obj = Json::object();
  for (const auto& [name, value] : inputs) obj[name] = value_to_json(value);
  return obj;
}

InputBindings inputs_from_json(const Json& j) {
  if (!j.is_object()) throw DataError("inputs must be an object");
  InputBindings out;
  for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = value_from_json(it.value());
  return out;
}

std::string to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Begin: return "begin";
    case NodeKind::Exit: return "exit";
    case NodeKind::Operation: return "operation";
    case NodeKind::Condition: return "condition";
  }
  return "unknown";
}

std::string to_string(EdgeDirection dir) { return dir == EdgeDirection::Forward ? "forward" : "backward"; }

std::string to_string(Branch branch) {
  switch (branch) {
    case Branch::None: return "none";
    case Branch::True: return "T";
    case Branch::False: return "F";
  }
  return "none";
}

namespace {

template <typename E>
E enum_from(const Json& j, std::initializer_list<E> options) {
  const std::string text = j.get<std::string>();
  for (E e : options) {
    if (to_string(e) == text) return e;
  }
  throw DataError("unknown enum value '" + text + "'");
}

}  // namespace

Json cfg_to_json(const Cfg& cfg) {
  Json nodes = Json::array();
  for (const CfgNode& n : cfg.nodes()) {
    Json node{{"index", n.index}, {"kind", to_string(n.kind)}, {"label", n.label}, {"tokens", n.tokens}};
    if (n.span) {
      node["span"] = {{"start_line", n.span->start_line}, {"end_line", n.span->end_line}, {"start_col", n.span->start_col}};
    } else {
      node["span"] = nullptr;
    }
    nodes.push_back(std::move(node));
  }
  Json edges = Json::array();
  for (const CfgEdge& e : cfg.edges()) {
    edges.push_back({{"src", e.src}, {"dst", e.dst}, {"direction", to_string(e.direction)}, {"branch", to_string(e.branch)}});
  }
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}, {"source_hash", cfg.source_hash()}};
}

Cfg cfg_from_json(const Json& j) {
  try {
    std::vector<CfgNode> nodes;
    for (const Json& jn : j.at("nodes")) {
      CfgNode n;
      n.index = jn.at("index").get<int>();
      n.kind = enum_from<NodeKind>(jn.at("kind"), {NodeKind::Begin, NodeKind::Exit, NodeKind::Operation, NodeKind::Condition});
      n.label = jn.at("label").get<std::string>();
      n.tokens = jn.at("tokens").get<std::vector<std::string>>();
      const Json& span = jn.at("span");
      if (!span.is_null()) {
        n.span = SourceSpan{span.at("start_line").get<int>(), span.at("end_line").get<int>(), span.at("start_col").get<int>()};
      }
      nodes.push_back(std::move(n));
    }
    std::vector<CfgEdge> edges;
    for (const Json& je : j.at("edges")) {
      edges.push_back({je.at("src").get<int>(), je.at("dst").get<int>(),
                       enum_from<EdgeDirection>(je.at("direction"), {EdgeDirection::Forward, EdgeDirection::Backward}),
                       enum_from<Branch>(je.at("branch"), {Branch::None, Branch::True, Branch::False})});
    }
    Cfg cfg(std::move(nodes), std::move(edges), j.value("source_hash", std::uint64_t{0}));
    cfg.validate();
    return cfg;
  } catch (const Json::exception& e) {
    throw DataError(std::string("malformed CFG: ") + e.what());
  } catch (const CfgError& e) {
    throw DataError(e.what());
  }
}

Json trace_to_json(const ExecutionTrace& trace, const Cfg& cfg) {
  std::vector<int> covered = trace.covered_nodes;
  std::sort(covered.begin(), covered.end());
  Json env = Json::object();
  for (const auto& [name, value] : trace.final_env) env[name] = value_to_json(value);
  Json out{{"status", to_string(trace.status)},
           {"covered_nodes", covered},
           {"covered_lines", trace.covered_lines},
           {"steps", trace.walk.size()},
           {"output", trace.output},
           {"final_env", std::move(env)},
           {"crash_node", nullptr},
           {"crash_line", nullptr},
           {"error_kind", nullptr},
           {"error_message", nullptr}};
  if (trace.crash_node) {
    out["crash_node"] = *trace.crash_node;
    if (auto line = cfg.line_of(*trace.crash_node)) out["crash_line"] = *line;
  }
  if (trace.error_kind) {
    out["error_kind"] = to_string(*trace.error_kind);
    out["error_message"] = trace.error_message;
  }
  return out;
}

std::string dump_line(const Json& j) { return j.dump(-1, ' ', false, Json::error_handler_t::replace) + "\n"; }

std::string dump_pretty(const Json& j) { return j.dump(2, ' ', false, Json::error_handler_t::replace) + "\n"; }

}  // namespace flowcov
