#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "flowcov/cfg.hpp"
#include "flowcov/serialize.hpp"

namespace flowcov {

class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ErrorVerdict {
  bool has_error = false;
  std::optional<int> crash_node;
  std::optional<int> crash_line;

  bool operator==(const ErrorVerdict&) const = default;
};

/// 0/1 per node from a list of covered node indices.
std::vector<int> labels_from_coverage(const Cfg& cfg, const std::vector<int>& covered_nodes);

/// True (error) iff EXIT is labeled 0.
bool detect(const std::vector<int>& labels, const Cfg& cfg);

/// The highest-index labeled node none of whose forward successors is
/// labeled. Throws AnalysisError when BEGIN is unlabeled.
int localize(const std::vector<int>& labels, const Cfg& cfg);

/// detect, then localize when an error is reported.
ErrorVerdict analyze(const std::vector<int>& labels, const Cfg& cfg);

Json verdict_to_json(const ErrorVerdict& v);

}  // namespace flowcov
