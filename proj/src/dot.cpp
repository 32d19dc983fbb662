#include "flowcov/dot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace flowcov {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    if (ch == '\n') {
      out += "\\n";
      continue;
    }
    out += ch;
  }
  return out;
}

const char* shape_of(NodeKind k) {
  switch (k) {
    case NodeKind::Begin:
    case NodeKind::Exit:
      return "ellipse";
    case NodeKind::Condition:
      return "diamond";
    case NodeKind::Operation:
      break;
  }
  return "box";
}

}  // namespace

std::string heat_color(double score) {
  if (std::isnan(score)) throw std::invalid_argument("heat_color: score is NaN");
  const double s = std::clamp(score, 0.0, 1.0);
  const int other = static_cast<int>(std::lround(255.0 * (1.0 - s)));
  char buf[8];
  std::snprintf(buf, sizeof buf, "#ff%02x%02x", other, other);
  return buf;
}

std::string export_dot(const Cfg& cfg, const std::optional<std::vector<double>>& scores,
                       const std::optional<std::vector<int>>& labels) {
  if (scores && scores->size() != cfg.size()) {
    throw std::invalid_argument("export_dot: " + std::to_string(scores->size()) + " scores for " +
                                std::to_string(cfg.size()) + " nodes");
  }
  if (labels && labels->size() != cfg.size()) {
    throw std::invalid_argument("export_dot: " + std::to_string(labels->size()) + " labels for " +
                                std::to_string(cfg.size()) + " nodes");
  }
  std::ostringstream out;
  out << "digraph cfg {\n";
  out << "  node [style=filled, fontname=\"Helvetica\"];\n";
  for (const CfgNode& n : cfg.nodes()) {
    const std::size_t i = static_cast<std::size_t>(n.index);
    std::string text = n.label;
    if (n.span) text = std::to_string(n.span->start_line) + ": " + text;
    if (scores) {
      char buf[16];
      std::snprintf(buf, sizeof buf, "%.3f", (*scores)[i]);
      text += std::string("\n") + buf;
    }
    out << "  n" << n.index << " [label=\"" << escape(text) << "\", shape=" << shape_of(n.kind)
        << ", fillcolor=\"" << heat_color(scores ? (*scores)[i] : 0.0) << "\"";
    if (labels) {
      if ((*labels)[i]) {
        out << ", color=\"black\", penwidth=3";
      } else {
        out << ", color=\"gray60\", penwidth=1";
      }
    }
    out << "];\n";
  }
  for (const CfgEdge& e : cfg.edges()) {
    out << "  n" << e.src << " -> n" << e.dst;
    if (e.direction == EdgeDirection::Backward) {
      out << " [style=dashed]";
    } else if (e.branch != Branch::None) {
      out << " [label=\"" << (e.branch == Branch::True ? "T" : "F") << "\"]";
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace flowcov
