#include "flowcov/analyzer.hpp"

#include <string>

namespace flowcov {

namespace {

void check_size(const std::vector<int>& labels, const Cfg& cfg) {
  if (labels.size() != cfg.size()) {
    throw std::invalid_argument(std::to_string(labels.size()) + " labels for a " + std::to_string(cfg.size()) +
                                "-node graph");
  }
}

}  // namespace

std::vector<int> labels_from_coverage(const Cfg& cfg, const std::vector<int>& covered_nodes) {
  std::vector<int> labels(cfg.size(), 0);
  for (int i : covered_nodes) labels.at(static_cast<std::size_t>(i)) = 1;
  return labels;
}

bool detect(const std::vector<int>& labels, const Cfg& cfg) {
  check_size(labels, cfg);
  return labels[static_cast<std::size_t>(cfg.exit_index())] == 0;
}

int localize(const std::vector<int>& labels, const Cfg& cfg) {
  check_size(labels, cfg);
  if (labels[0] == 0) throw AnalysisError("no covered node: BEGIN is labeled uncovered");
  for (int i = static_cast<int>(cfg.size()) - 1; i >= 0; --i) {
    if (!labels[static_cast<std::size_t>(i)]) continue;
    bool dead_end = true;
    for (int s : cfg.forward_successors(i)) dead_end &= labels[static_cast<std::size_t>(s)] == 0;
    if (dead_end) return i;
  }
  // Unreachable: the highest labeled node has no labeled successor.
  return 0;
}

ErrorVerdict analyze(const std::vector<int>& labels, const Cfg& cfg) {
  ErrorVerdict v;
  v.has_error = detect(labels, cfg);
  if (v.has_error) {
    v.crash_node = localize(labels, cfg);
    v.crash_line = cfg.line_of(*v.crash_node);
  }
  return v;
}

Json verdict_to_json(const ErrorVerdict& v) {
  Json j;
  j["has_error"] = v.has_error;
  j["crash_node"] = v.crash_node ? Json(*v.crash_node) : Json(nullptr);
  j["crash_line"] = v.crash_line ? Json(*v.crash_line) : Json(nullptr);
  return j;
}

}  // namespace flowcov
