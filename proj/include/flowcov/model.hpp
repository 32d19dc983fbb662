#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "flowcov/autodiff.hpp"
#include "flowcov/cfg.hpp"
#include "flowcov/coverage_head.hpp"
#include "flowcov/dataset.hpp"
#include "flowcov/encoder.hpp"
#include "flowcov/network.hpp"
#include "flowcov/propagator.hpp"
#include "flowcov/serialize.hpp"
#include "flowcov/vocab.hpp"

namespace flowcov {

enum class Precision { Float32, Float64 };
std::string to_string(Precision p);
Precision precision_from_string(std::string_view text);

inline constexpr double kDefaultAlpha = 0.5;
inline constexpr int kCheckpointFormat = 1;

/// Score clamp used by the loss for each float type.
template <typename T>
constexpr T bce_epsilon() {
  return sizeof(T) == sizeof(float) ? T(1e-6) : T(1e-7);
}

template <typename T>
struct ForwardPass {
  NetworkVars<T> net;
  std::vector<Var<T>> embeddings;
  PropagationState<T> state;
  Var<T> scores;
};

/// Encode every node (identical token sequences share one encoding),
/// propagate and score.
template <typename T>
ForwardPass<T> forward_pass(Tape<T>& tape, const Cfg& cfg, const Vocab& vocab, const ParamStore<T>& params,
                            Grads<T>* grads, const PropagationOptions& options) {
  ForwardPass<T> f;
  f.net = bind_network(tape, params, grads);
  std::map<std::vector<int>, Var<T>> cache;
  f.embeddings.reserve(cfg.size());
  for (const CfgNode& node : cfg.nodes()) {
    std::vector<int> ids = vocab.encode(node.tokens);
    auto it = cache.find(ids);
    if (it == cache.end()) it = cache.emplace(ids, encode_node(tape, f.net, ids)).first;
    f.embeddings.push_back(it->second);
  }
  f.state = propagate(tape, cfg, f.embeddings, f.net, options);
  f.scores = score_nodes(tape, f.net, f.state.h);
  return f;
}

/// t_i = 1 iff node i was covered.
std::vector<double> coverage_targets(const Cfg& cfg, const std::vector<int>& covered_nodes);

struct Prediction {
  std::vector<double> scores;
  std::vector<int> labels;
  std::vector<CfgEdge> surviving;
  std::vector<double> hidden_mean;
};

struct TrainConfig {
  int epochs = 30;
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  int embed = 64;
  int hidden = 128;
  double alpha = kDefaultAlpha;
  std::uint64_t seed = 0;
  Precision precision = Precision::Float64;
  int passes = 1;

  /// Throws std::invalid_argument for the first bad field.
  void validate() const;
};

class CoverageModel {
 public:
  static CoverageModel initialize(Vocab vocab, ModelDims dims, Precision precision, std::uint64_t seed);

  Prediction predict(const Cfg& cfg, double alpha = kDefaultAlpha) const;
  /// Mean BCE of the model's scores against the given coverage.
  double loss(const Cfg& cfg, const std::vector<int>& covered_nodes) const;

  Json to_json() const;
  static CoverageModel from_json(const Json& j);
  void save(const std::filesystem::path& path) const;
  static CoverageModel load(const std::filesystem::path& path);

  const Vocab& vocab() const { return vocab_; }
  const ModelDims& dims() const { return dims_; }
  Precision precision() const;
  PropagationOptions& options() { return options_; }
  const PropagationOptions& options() const { return options_; }
  std::size_t parameter_count() const;

  /// Direct access to the parameters; throws std::logic_error on a precision
  /// mismatch.
  template <typename T>
  ParamStore<T>& params() {
    if (auto* p = std::get_if<ParamStore<T>>(&params_)) return *p;
    throw std::logic_error("model precision is " + to_string(precision()));
  }
  template <typename T>
  const ParamStore<T>& params() const {
    if (auto* p = std::get_if<ParamStore<T>>(&params_)) return *p;
    throw std::logic_error("model precision is " + to_string(precision()));
  }

 private:
  CoverageModel(Vocab vocab, ModelDims dims) : vocab_(std::move(vocab)), dims_(dims) {}

  Vocab vocab_;
  ModelDims dims_;
  PropagationOptions options_;
  std::variant<ParamStore<double>, ParamStore<float>> params_;
};

struct EpochStats {
  int epoch = 0;
  double mean_loss = 0.0;
};

struct TrainResult {
  CoverageModel model;
  std::vector<EpochStats> epochs;
};

/// Builds the vocabulary from `records`, initializes, then runs `epochs`
/// passes of per-record Adam updates in a seeded shuffled order.
TrainResult train(const std::vector<DatasetRecord>& records, const TrainConfig& config,
                  const std::function<void(const EpochStats&)>& on_epoch = {});

}  // namespace flowcov
