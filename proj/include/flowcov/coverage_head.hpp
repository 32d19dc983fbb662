#pragma once

#include <vector>

#include "flowcov/autodiff.hpp"
#include "flowcov/network.hpp"

namespace flowcov {

/// sigmoid(W h_i + b) for every node, stacked into an N x 1 column.
template <typename T>
Var<T> score_nodes(Tape<T>& tape, const NetworkVars<T>& net, const std::vector<Var<T>>& h) {
  std::vector<Var<T>> scores;
  scores.reserve(h.size());
  for (const Var<T>& hi : h) scores.push_back(tape.sigmoid(tape.affine(net.head_w, hi, net.head_b)));
  return tape.concat_rows(scores);
}

/// label_i = 1 iff score_i >= alpha; node 0 (BEGIN) is always 1.
std::vector<int> classify(const std::vector<double>& scores, double alpha);

}  // namespace flowcov
