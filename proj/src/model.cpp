#include "flowcov/model.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace flowcov {

std::string to_string(Precision p) { return p == Precision::Float32 ? "float32" : "float64"; }

Precision precision_from_string(std::string_view text) {
  if (text == "float32") return Precision::Float32;
  if (text == "float64") return Precision::Float64;
  throw std::invalid_argument("unknown precision '" + std::string(text) + "' (expected float32 or float64)");
}

std::vector<double> coverage_targets(const Cfg& cfg, const std::vector<int>& covered_nodes) {
  std::vector<double> t(cfg.size(), 0.0);
  for (int i : covered_nodes) {
    if (i < 0 || static_cast<std::size_t>(i) >= t.size()) {
      throw std::out_of_range("covered node " + std::to_string(i) + " outside a " + std::to_string(t.size()) +
                              "-node graph");
    }
    t[static_cast<std::size_t>(i)] = 1.0;
  }
  return t;
}

void TrainConfig::validate() const {
  auto fail = [](const std::string& m) { throw std::invalid_argument(m); };
  if (epochs < 0) fail("epochs must be >= 0");
  if (!(lr > 0.0) || !std::isfinite(lr)) fail("learning rate must be positive");
  if (!(beta1 >= 0.0 && beta1 < 1.0)) fail("beta1 must lie in [0, 1)");
  if (!(beta2 >= 0.0 && beta2 < 1.0)) fail("beta2 must lie in [0, 1)");
  if (embed < 1) fail("embedding width must be >= 1");
  if (hidden < 1) fail("hidden width must be >= 1");
  if (!(alpha >= 0.0 && alpha <= 1.0)) fail("threshold must lie in [0, 1]");
  if (passes < 1) fail("passes must be >= 1");
}

namespace {

template <typename T>
std::vector<T> cast_targets(const std::vector<double>& t) {
  return std::vector<T>(t.begin(), t.end());
}

template <typename T>
Prediction predict_impl(const ParamStore<T>& store, const Vocab& vocab, const PropagationOptions& options,
                        const Cfg& cfg, double alpha) {
  Tape<T> tape;
  const ForwardPass<T> f = forward_pass<T>(tape, cfg, vocab, store, nullptr, options);
  Prediction p;
  for (T s : f.scores.value().data) p.scores.push_back(static_cast<double>(s));
  p.labels = classify(p.scores, alpha);
  p.surviving = f.state.surviving;
  p.hidden_mean = f.state.hidden_mean;
  return p;
}

template <typename T>
double loss_impl(const ParamStore<T>& store, const Vocab& vocab, const PropagationOptions& options, const Cfg& cfg,
                 const std::vector<int>& covered) {
  Tape<T> tape;
  const ForwardPass<T> f = forward_pass<T>(tape, cfg, vocab, store, nullptr, options);
  const Var<T> l = tape.bce(f.scores, cast_targets<T>(coverage_targets(cfg, covered)), bce_epsilon<T>());
  return static_cast<double>(l.value().data[0]);
}

template <typename T>
Json params_to_json(const ParamStore<T>& store) {
  Json out = Json::object();
  for (const auto& [name, e] : store.entries()) {
    Json values = Json::array();
    for (T v : e.value.data) values.push_back(static_cast<double>(v));
    out[name] = {{"shape", {e.value.rows, e.value.cols}}, {"values", std::move(values)}};
  }
  return out;
}

template <typename T>
ParamStore<T> params_from_json(const Json& j, const ModelDims& dims) {
  ParamStore<T> store;
  add_network_params(store, dims);
  if (!j.is_object()) throw DataError("checkpoint: parameters must be an object");
  for (auto& [name, e] : store.entries()) {
    if (!j.contains(name)) throw DataError("checkpoint: missing parameter '" + name + "'");
    const Json& p = j.at(name);
    const std::vector<int> shape = p.at("shape").get<std::vector<int>>();
    if (shape != std::vector<int>{e.value.rows, e.value.cols}) {
      throw DataError("checkpoint: parameter '" + name + "' has shape " + p.at("shape").dump() + ", expected " +
                      e.value.shape());
    }
    const Json& values = p.at("values");
    if (!values.is_array() || values.size() != e.value.size()) {
      throw DataError("checkpoint: parameter '" + name + "' has the wrong number of values");
    }
    for (std::size_t k = 0; k < e.value.size(); ++k) {
      const double v = values[k].get<double>();
      if (!std::isfinite(v)) throw DataError("checkpoint: parameter '" + name + "' holds a non-finite value");
      e.value.data[k] = static_cast<T>(v);
    }
  }
  for (const auto& [name, p] : j.items()) {
    if (!store.contains(name)) throw DataError("checkpoint: unexpected parameter '" + name + "'");
  }
  return store;
}

template <typename T>
void train_impl(CoverageModel& model, const std::vector<DatasetRecord>& records, const TrainConfig& config,
                std::vector<EpochStats>& history, const std::function<void(const EpochStats&)>& on_epoch) {
  ParamStore<T>& store = model.params<T>();
  const AdamConfig adam{config.lr, config.beta1, config.beta2, 1e-8};
  std::vector<std::vector<T>> targets;
  targets.reserve(records.size());
  for (const auto& r : records) targets.push_back(cast_targets<T>(coverage_targets(r.cfg, r.covered_nodes)));

  std::vector<std::size_t> order(records.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 shuffle_rng(splitmix64(config.seed ^ 0x5eedf00dULL));
  Grads<T> grads = zero_grads(store);

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[shuffle_rng() % i]);
    double total = 0.0;
    for (std::size_t idx : order) {
      const DatasetRecord& rec = records[idx];
      for (auto& [name, g] : grads) std::fill(g.data.begin(), g.data.end(), T(0));
      try {
        Tape<T> tape;
        const ForwardPass<T> f = forward_pass<T>(tape, rec.cfg, model.vocab(), store, &grads, model.options());
        const Var<T> loss = tape.bce(f.scores, targets[idx], bce_epsilon<T>());
        const double l = static_cast<double>(loss.value().data[0]);
        if (!std::isfinite(l)) throw NumericalError("non-finite loss");
        tape.backward(loss);
        for (const auto& [name, g] : grads) {
          for (T v : g.data) {
            if (!std::isfinite(static_cast<double>(v))) throw NumericalError("non-finite gradient for " + name);
          }
        }
        total += l;
      } catch (const NumericalError& e) {
        throw NumericalError("epoch " + std::to_string(epoch) + ", record " + rec.id + ": " + e.what());
      }
      adam_step(store, grads, adam);
    }
    EpochStats stats{epoch, records.empty() ? 0.0 : total / static_cast<double>(records.size())};
    history.push_back(stats);
    if (on_epoch) on_epoch(stats);
  }
}

}  // namespace

CoverageModel CoverageModel::initialize(Vocab vocab, ModelDims dims, Precision precision, std::uint64_t seed) {
  if (dims.vocab != static_cast<int>(vocab.size())) {
    throw std::invalid_argument("dims.vocab " + std::to_string(dims.vocab) + " does not match a vocabulary of " +
                                std::to_string(vocab.size()));
  }
  if (dims.embed < 1 || dims.hidden < 1) throw std::invalid_argument("model widths must be >= 1");
  CoverageModel m(std::move(vocab), dims);
  auto setup = [&](auto store) {
    add_network_params(store, dims);
    xavier_init(store, seed);
    m.params_ = std::move(store);
  };
  if (precision == Precision::Float32) {
    setup(ParamStore<float>{});
  } else {
    setup(ParamStore<double>{});
  }
  return m;
}

Precision CoverageModel::precision() const {
  return std::holds_alternative<ParamStore<float>>(params_) ? Precision::Float32 : Precision::Float64;
}

std::size_t CoverageModel::parameter_count() const {
  return std::visit([](const auto& s) { return s.parameter_count(); }, params_);
}

Prediction CoverageModel::predict(const Cfg& cfg, double alpha) const {
  return std::visit([&](const auto& s) { return predict_impl(s, vocab_, options_, cfg, alpha); }, params_);
}

double CoverageModel::loss(const Cfg& cfg, const std::vector<int>& covered_nodes) const {
  return std::visit([&](const auto& s) { return loss_impl(s, vocab_, options_, cfg, covered_nodes); }, params_);
}

Json CoverageModel::to_json() const {
  Json j;
  j["format_version"] = kCheckpointFormat;
  j["precision"] = to_string(precision());
  j["dims"] = {{"vocab", dims_.vocab}, {"embed", dims_.embed}, {"hidden", dims_.hidden}, {"passes", options_.passes}};
  j["vocab"] = vocab_.tokens();
  j["parameters"] = std::visit([](const auto& s) { return params_to_json(s); }, params_);
  return j;
}

CoverageModel CoverageModel::from_json(const Json& j) {
  try {
    if (!j.is_object()) throw DataError("checkpoint: expected an object");
    const int version = j.at("format_version").get<int>();
    if (version != kCheckpointFormat) {
      throw DataError("checkpoint: unsupported format_version " + std::to_string(version));
    }
    const Precision precision = precision_from_string(j.at("precision").get<std::string>());
    const Json& d = j.at("dims");
    ModelDims dims{d.at("vocab").get<int>(), d.at("embed").get<int>(), d.at("hidden").get<int>()};
    if (dims.vocab < 4 || dims.embed < 1 || dims.hidden < 1) throw DataError("checkpoint: bad dims");
    Vocab vocab(j.at("vocab").get<std::vector<std::string>>());
    if (static_cast<int>(vocab.size()) != dims.vocab) {
      throw DataError("checkpoint: vocabulary has " + std::to_string(vocab.size()) + " tokens, dims say " +
                      std::to_string(dims.vocab));
    }
    CoverageModel m(std::move(vocab), dims);
    m.options_.passes = d.value("passes", 1);
    if (m.options_.passes < 1) throw DataError("checkpoint: passes must be >= 1");
    if (precision == Precision::Float32) {
      m.params_ = params_from_json<float>(j.at("parameters"), dims);
    } else {
      m.params_ = params_from_json<double>(j.at("parameters"), dims);
    }
    return m;
  } catch (const Json::exception& e) {
    throw DataError(std::string("checkpoint: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("checkpoint: ") + e.what());
  }
}

void CoverageModel::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << dump_line(to_json());
  if (!out) throw std::runtime_error("error writing " + path.string());
}

CoverageModel CoverageModel::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  return from_json(j);
}

TrainResult train(const std::vector<DatasetRecord>& records, const TrainConfig& config,
                  const std::function<void(const EpochStats&)>& on_epoch) {
  config.validate();
  if (records.empty()) throw std::invalid_argument("cannot train on an empty dataset");
  std::vector<const Cfg*> cfgs;
  cfgs.reserve(records.size());
  for (const auto& r : records) cfgs.push_back(&r.cfg);
  Vocab vocab = build_vocab(cfgs);
  const ModelDims dims{static_cast<int>(vocab.size()), config.embed, config.hidden};
  TrainResult result{CoverageModel::initialize(std::move(vocab), dims, config.precision, config.seed), {}};
  result.model.options().passes = config.passes;
  if (config.precision == Precision::Float32) {
    train_impl<float>(result.model, records, config, result.epochs, on_epoch);
  } else {
    train_impl<double>(result.model, records, config, result.epochs, on_epoch);
  }
  return result;
}

}  // namespace flowcov
