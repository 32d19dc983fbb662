#pragma once

#include <cstdint>
#include <string>

#include "flowcov/autodiff.hpp"

namespace flowcov {

struct ModelDims {
  int vocab = 0;
  int embed = 64;
  int hidden = 128;

  bool operator==(const ModelDims&) const = default;
};

/// Gate parameters of one GRU or LSTM gate: input weights, recurrent
/// weights, bias.
template <typename T>
struct GateVars {
  Var<T> w, u, b;
};

/// Every network parameter bound as a leaf on one tape.
template <typename T>
struct NetworkVars {
  Var<T> embedding;  // vocab x embed
  GateVars<T> gru_update, gru_reset, gru_candidate;
  GateVars<T> cell_input, cell_forget, cell_output, cell_update;
  Var<T> head_w, head_b;
  int embed = 0;
  int hidden = 0;
};

namespace param_names {
inline const std::string kEmbedding = "embedding";
inline const std::string kHeadW = "head.W_c";
inline const std::string kHeadB = "head.b_c";
// Gate prefixes; each expands to <prefix>.W, <prefix>.U, <prefix>.b.
inline const std::string kGruUpdate = "gru.update";
inline const std::string kGruReset = "gru.reset";
inline const std::string kGruCandidate = "gru.candidate";
inline const std::string kCellInput = "cell.input";
inline const std::string kCellForget = "cell.forget";
inline const std::string kCellOutput = "cell.output";
inline const std::string kCellUpdate = "cell.update";
}  // namespace param_names

/// Declares all parameters with their shapes (values zero).
template <typename T>
void add_network_params(ParamStore<T>& store, const ModelDims& d) {
  using namespace param_names;
  store.add(kEmbedding, d.vocab, d.embed);
  for (const auto* g : {&kGruUpdate, &kGruReset, &kGruCandidate}) {
    store.add(*g + ".W", d.embed, d.embed);
    store.add(*g + ".U", d.embed, d.embed);
    store.add(*g + ".b", d.embed, 1);
  }
  for (const auto* g : {&kCellInput, &kCellForget, &kCellOutput, &kCellUpdate}) {
    store.add(*g + ".W", d.hidden, d.embed);
    store.add(*g + ".U", d.hidden, d.hidden);
    store.add(*g + ".b", d.hidden, 1);
  }
  store.add(kHeadW, 1, d.hidden);
  store.add(kHeadB, 1, 1);
}

/// Binds the store's tensors on `tape`. With `grads` set, backward() adds
/// each parameter's gradient into grads[name].
template <typename T>
NetworkVars<T> bind_network(Tape<T>& tape, const ParamStore<T>& store, Grads<T>* grads) {
  using namespace param_names;
  auto bind = [&](const std::string& name) {
    Tensor<T>* sink = nullptr;
    if (grads) {
      auto& g = (*grads)[name];
      const auto& v = store.value(name);
      if (!g.same_shape(v)) g = Tensor<T>(v.rows, v.cols);
      sink = &g;
    }
    return tape.param(store.value(name), sink);
  };
  auto gate = [&](const std::string& prefix) {
    return GateVars<T>{bind(prefix + ".W"), bind(prefix + ".U"), bind(prefix + ".b")};
  };
  NetworkVars<T> v;
  v.embedding = bind(kEmbedding);
  v.gru_update = gate(kGruUpdate);
  v.gru_reset = gate(kGruReset);
  v.gru_candidate = gate(kGruCandidate);
  v.cell_input = gate(kCellInput);
  v.cell_forget = gate(kCellForget);
  v.cell_output = gate(kCellOutput);
  v.cell_update = gate(kCellUpdate);
  v.head_w = bind(kHeadW);
  v.head_b = bind(kHeadB);
  v.embed = store.value(kEmbedding).cols;
  v.hidden = store.value(kHeadW).cols;
  return v;
}

}  // namespace flowcov
