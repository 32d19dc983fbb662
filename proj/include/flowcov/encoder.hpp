#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "flowcov/autodiff.hpp"
#include "flowcov/network.hpp"

namespace flowcov {

/// W x + U h + b, dropping the U h term when the state is known to be zero.
template <typename T>
Var<T> gate_input(Tape<T>& tape, const GateVars<T>& g, Var<T> x, const std::optional<Var<T>>& h) {
  if (h) return tape.affine2(g.w, x, g.u, *h, g.b);
  return tape.affine(g.w, x, g.b);
}

/// GRU over the token ids starting from a zero state, then the element-wise
/// mean of all intermediate states.
template <typename T>
Var<T> encode_node(Tape<T>& tape, const NetworkVars<T>& net, const std::vector<int>& ids) {
  if (ids.empty()) throw std::invalid_argument("encode_node: empty token sequence");
  std::optional<Var<T>> h;
  std::vector<Var<T>> states;
  states.reserve(ids.size());
  for (int id : ids) {
    const Var<T> x = tape.row(net.embedding, id);
    const Var<T> z = tape.sigmoid(gate_input(tape, net.gru_update, x, h));
    Var<T> candidate;
    Var<T> next;
    if (h) {
      const Var<T> r = tape.sigmoid(gate_input(tape, net.gru_reset, x, h));
      candidate = tape.tanh(tape.affine2(net.gru_candidate.w, x, net.gru_candidate.u, tape.mul(r, *h), net.gru_candidate.b));
      // h + z * (candidate - h)
      next = tape.add(*h, tape.mul(z, tape.sub(candidate, *h)));
    } else {
      candidate = tape.tanh(tape.affine(net.gru_candidate.w, x, net.gru_candidate.b));
      next = tape.mul(z, candidate);
    }
    states.push_back(next);
    h = next;
  }
  return states.size() == 1 ? states.front() : tape.mean_of(states);
}

}  // namespace flowcov
