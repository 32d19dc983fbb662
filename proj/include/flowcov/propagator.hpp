#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "flowcov/autodiff.hpp"
#include "flowcov/cfg.hpp"
#include "flowcov/encoder.hpp"
#include "flowcov/network.hpp"

namespace flowcov {

struct PropagationOptions {
  /// Sweeps over the graph. Sweeps after the first also average the previous
  /// sweep's loop-step states into each loop test's input state.
  int passes = 1;
};

template <typename T>
struct PropagationState {
  std::vector<Var<T>> h;
  std::vector<Var<T>> c;
  /// Forward edges still open after branch gating, in CFG edge order.
  std::vector<CfgEdge> surviving;
  /// Per node: the successor whose edge was closed, or -1.
  std::vector<int> blocked;
  /// Per node: mean of h_i when the node was finished.
  std::vector<double> hidden_mean;
  /// Per node: whether any state arrived over an open forward edge.
  std::vector<bool> received;
};

/// One LSTM-style cell step. Missing states stand for zero vectors.
template <typename T>
std::pair<Var<T>, Var<T>> cell_step(Tape<T>& tape, const NetworkVars<T>& net, Var<T> x,
                                    const std::optional<Var<T>>& h, const std::optional<Var<T>>& c) {
  const Var<T> in = tape.sigmoid(gate_input(tape, net.cell_input, x, h));
  const Var<T> op = tape.sigmoid(gate_input(tape, net.cell_output, x, h));
  const Var<T> u = tape.tanh(gate_input(tape, net.cell_update, x, h));
  Var<T> cell = tape.mul(in, u);
  if (c) {
    const Var<T> fg = tape.sigmoid(gate_input(tape, net.cell_forget, x, h));
    cell = tape.add(cell, tape.mul(fg, *c));
  }
  return {tape.mul(op, tape.tanh(cell)), cell};
}

template <typename T>
void require_finite(const Tensor<T>& t, int node) {
  for (T v : t.data) {
    if (!std::isfinite(static_cast<double>(v))) {
      throw NumericalError("non-finite hidden state at node " + std::to_string(node));
    }
  }
}

/// Computes node states in index order. Backward edges contribute only the
/// step node's embedding, through one extra cell step at the loop test.
/// At a condition node with successors j < k the edge to j is closed when
/// mean(h_i) >= 0 and the edge to k otherwise.
template <typename T>
PropagationState<T> propagate(Tape<T>& tape, const Cfg& cfg, const std::vector<Var<T>>& embeddings,
                              const NetworkVars<T>& net, const PropagationOptions& options = {}) {
  const int n = static_cast<int>(cfg.size());
  if (static_cast<int>(embeddings.size()) != n) {
    throw std::invalid_argument("propagate: " + std::to_string(embeddings.size()) + " embeddings for " +
                                std::to_string(n) + " nodes");
  }
  if (options.passes < 1) throw std::invalid_argument("propagate: passes must be >= 1");
  const Var<T> zero = tape.constant(Tensor<T>(net.hidden, 1));
  PropagationState<T> s;
  for (int pass = 0; pass < options.passes; ++pass) {
    const PropagationState<T> previous = s;
    s.h.assign(static_cast<std::size_t>(n), zero);
    s.c.assign(static_cast<std::size_t>(n), zero);
    s.blocked.assign(static_cast<std::size_t>(n), -1);
    s.hidden_mean.assign(static_cast<std::size_t>(n), 0.0);
    s.received.assign(static_cast<std::size_t>(n), false);
    s.received[0] = true;
    for (int i = 1; i < n; ++i) {
      std::vector<Var<T>> hs, cs;
      bool any_live = false;
      for (int p : cfg.forward_predecessors(i)) {
        if (s.blocked[static_cast<std::size_t>(p)] == i) continue;
        hs.push_back(s.h[static_cast<std::size_t>(p)]);
        cs.push_back(s.c[static_cast<std::size_t>(p)]);
        any_live |= p != 0;
      }
      if (pass > 0) {
        for (int j : cfg.backward_sources(i)) {
          hs.push_back(previous.h[static_cast<std::size_t>(j)]);
          cs.push_back(previous.c[static_cast<std::size_t>(j)]);
          any_live = true;
        }
      }
      s.received[static_cast<std::size_t>(i)] = !hs.empty();
      std::optional<Var<T>> h_in, c_in;
      if (any_live) {
        h_in = hs.size() == 1 ? hs.front() : tape.mean_of(hs);
        c_in = cs.size() == 1 ? cs.front() : tape.mean_of(cs);
      }
      auto [h, c] = cell_step(tape, net, embeddings[static_cast<std::size_t>(i)], h_in, c_in);
      for (int j : cfg.backward_sources(i)) {
        std::tie(h, c) = cell_step(tape, net, embeddings[static_cast<std::size_t>(j)], std::optional(h), std::optional(c));
      }
      require_finite(h.value(), i);
      require_finite(c.value(), i);
      s.h[static_cast<std::size_t>(i)] = h;
      s.c[static_cast<std::size_t>(i)] = c;
      T sum = 0;
      for (T v : h.value().data) sum += v;
      const double mean = static_cast<double>(sum / static_cast<T>(net.hidden));
      s.hidden_mean[static_cast<std::size_t>(i)] = mean;
      if (cfg.node(i).kind == NodeKind::Condition) {
        const auto& succ = cfg.forward_successors(i);
        s.blocked[static_cast<std::size_t>(i)] = mean >= 0.0 ? succ.front() : succ.back();
      }
    }
  }
  for (const CfgEdge& e : cfg.edges()) {
    if (e.direction == EdgeDirection::Forward && s.blocked[static_cast<std::size_t>(e.src)] != e.dst) {
      s.surviving.push_back(e);
    }
  }
  return s;
}

}  // namespace flowcov
