#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "flowcov/autodiff.hpp"
#include "flowcov/model.hpp"

namespace flowcov {

struct GradCheckOptions {
  /// Central-difference step.
  double step = 1e-5;
  /// Relative errors divide by max(|analytic|, |numeric|, floor), so that
  /// coordinates with vanishing gradients are judged by absolute error.
  double floor = 1e-6;
};

struct GradCheckResult {
  std::size_t checked = 0;
  /// Coordinates whose perturbation flipped a branch decision; the loss is
  /// not differentiable across such a flip.
  std::size_t skipped = 0;
  double max_rel = 0.0;
  double mean_rel = 0.0;
  std::string worst;
};

/// Compares backprop gradients with central differences for every scalar of
/// every parameter. `eval(grads)` evaluates the loss at the store's current
/// values and returns {loss, decisions}; with grads set it also backpropagates
/// into them. `decisions` fingerprints every discrete choice of the forward
/// pass.
template <typename Eval>
GradCheckResult check_gradients(ParamStore<double>& store, Eval&& eval, const GradCheckOptions& opt = {}) {
  Grads<double> analytic = zero_grads(store);
  const auto base = eval(&analytic);
  GradCheckResult r;
  double sum = 0.0;
  for (auto& [name, e] : store.entries()) {
    const Tensor<double>& g = analytic.at(name);
    for (std::size_t k = 0; k < e.value.size(); ++k) {
      const double saved = e.value.data[k];
      e.value.data[k] = saved + opt.step;
      const auto plus = eval(nullptr);
      e.value.data[k] = saved - opt.step;
      const auto minus = eval(nullptr);
      e.value.data[k] = saved;
      if (plus.second != base.second || minus.second != base.second) {
        ++r.skipped;
        continue;
      }
      const double numeric = (plus.first - minus.first) / (2.0 * opt.step);
      const double a = g.data[k];
      const double rel = std::abs(a - numeric) / std::max({std::abs(a), std::abs(numeric), opt.floor});
      ++r.checked;
      sum += rel;
      if (rel > r.max_rel) {
        r.max_rel = rel;
        r.worst = name + "[" + std::to_string(k) + "]";
      }
    }
  }
  r.mean_rel = r.checked ? sum / static_cast<double>(r.checked) : 0.0;
  return r;
}

/// check_gradients for the full model's BCE loss on one graph.
inline GradCheckResult check_model_gradients(ParamStore<double>& store, const Vocab& vocab, const Cfg& cfg,
                                             const std::vector<int>& covered_nodes,
                                             const GradCheckOptions& opt = {}) {
  const std::vector<double> targets = coverage_targets(cfg, covered_nodes);
  auto eval = [&](Grads<double>* grads) {
    if (grads) {
      for (auto& [name, g] : *grads) std::fill(g.data.begin(), g.data.end(), 0.0);
    }
    Tape<double> tape;
    const ForwardPass<double> f = forward_pass<double>(tape, cfg, vocab, store, grads, PropagationOptions{});
    const Var<double> loss = tape.bce(f.scores, targets, bce_epsilon<double>());
    if (grads) tape.backward(loss);
    return std::make_pair(loss.value().data[0], f.state.blocked);
  };
  return check_gradients(store, eval, opt);
}

}  // namespace flowcov
