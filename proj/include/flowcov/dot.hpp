#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flowcov/cfg.hpp"

namespace flowcov {

/// Graphviz text for `cfg`. Scores (one per node, in [0, 1]) set the red fill
/// intensity; nodes labeled 1 get a thick outline. Condition edges carry T/F
/// labels and backward edges are dashed. Throws std::invalid_argument when a
/// vector's length differs from the node count.
std::string export_dot(const Cfg& cfg, const std::optional<std::vector<double>>& scores = std::nullopt,
                       const std::optional<std::vector<int>>& labels = std::nullopt);

/// "#rrggbb" fill for a score: white at 0, pure red at 1.
std::string heat_color(double score);

}  // namespace flowcov
