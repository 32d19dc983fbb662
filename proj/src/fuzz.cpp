#include "flowcov/fuzz.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "flowcov/cfg.hpp"
#include "flowcov/frontend.hpp"
#include "flowcov/interpreter.hpp"
#include "flowcov/model.hpp"

namespace flowcov {

namespace {

const std::vector<std::string> kStringPool = {"", "a", "abc", "0", "hello", "-1"};

std::string key_of(const InputBindings& inputs) { return inputs_to_json(inputs).dump(); }

std::set<std::string> tried(const std::vector<FuzzAttempt>& history) {
  std::set<std::string> keys;
  for (const auto& a : history) keys.insert(key_of(a.inputs));
  return keys;
}

std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng() % span);
}

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

FuzzTarget make_fuzz_target(std::string source, const InputBindings& kinds) {
  FuzzTarget t;
  t.ast = parse(source);
  t.source = std::move(source);
  if (!kinds.empty()) {
    t.input_kinds = kinds;
  } else {
    for (const auto& name : free_variables(t.ast)) t.input_kinds[name] = Value(0);
  }
  return t;
}

RandomInputGenerator::RandomInputGenerator(IntRange ints, double boundary_bias, int max_draws)
    : ints_(ints), boundary_bias_(boundary_bias), max_draws_(max_draws) {
  if (ints.min > ints.max) throw std::invalid_argument("random generator: empty int range");
  if (!(boundary_bias >= 0.0 && boundary_bias <= 1.0)) throw std::invalid_argument("boundary bias must lie in [0, 1]");
  if (max_draws < 1) throw std::invalid_argument("max_draws must be >= 1");
}

InputBindings RandomInputGenerator::draw(const FuzzTarget& target, std::mt19937_64& rng) const {
  auto draw_int = [&]() -> std::int64_t {
    if (unit(rng) < boundary_bias_) return uniform(rng, -1, 1);
    return uniform(rng, ints_.min, ints_.max);
  };
  InputBindings out;
  for (const auto& [name, kind] : target.input_kinds) {
    if (kind.is_bool()) {
      out[name] = Value(rng() % 2 == 1);
    } else if (kind.is_str()) {
      out[name] = Value(kStringPool[rng() % kStringPool.size()]);
    } else if (kind.is_list()) {
      List items;
      const auto len = uniform(rng, 0, 5);
      for (std::int64_t i = 0; i < len; ++i) items.emplace_back(draw_int());
      out[name] = Value::list(std::move(items));
    } else {
      out[name] = Value(draw_int());
    }
  }
  return out;
}

std::optional<InputBindings> RandomInputGenerator::next(const FuzzTarget& target,
                                                        const std::vector<FuzzAttempt>& history,
                                                        std::mt19937_64& rng) {
  const std::set<std::string> seen = tried(history);
  for (int i = 0; i < max_draws_; ++i) {
    InputBindings candidate = draw(target, rng);
    if (!seen.count(key_of(candidate))) return candidate;
    if (target.input_kinds.empty()) break;
  }
  return std::nullopt;
}

OracleInputGenerator::OracleInputGenerator(int probes, RandomInputGenerator base)
    : probes_(probes), base_(std::move(base)) {
  if (probes < 1) throw std::invalid_argument("oracle generator needs at least one probe");
}

std::optional<InputBindings> OracleInputGenerator::next(const FuzzTarget& target,
                                                        const std::vector<FuzzAttempt>& history,
                                                        std::mt19937_64& rng) {
  std::vector<FuzzAttempt> seen = history;
  std::optional<InputBindings> first;
  for (int i = 0; i < probes_; ++i) {
    std::optional<InputBindings> candidate = base_.next(target, seen, rng);
    if (!candidate) break;
    if (!first) first = candidate;
    const Cfg cfg = build_cfg(target.ast, *candidate);
    if (execute(cfg, 100000).status == TraceStatus::Crashed) return candidate;
    seen.push_back({*candidate, {}});
  }
  return first;
}

ModelDetector::ModelDetector(const CoverageModel& model, double alpha) : model_(model), alpha_(alpha) {}

ErrorVerdict ModelDetector::check(const FuzzTarget& target, const InputBindings& inputs) const {
  const Cfg cfg = build_cfg(target.ast, inputs);
  return analyze(model_.predict(cfg, alpha_).labels, cfg);
}

ErrorVerdict OracleDetector::check(const FuzzTarget& target, const InputBindings& inputs) const {
  const Cfg cfg = build_cfg(target.ast, inputs);
  const ExecutionTrace trace = execute(cfg, step_limit_);
  if (trace.status == TraceStatus::StepLimitExceeded) return {};
  std::vector<int> covered(trace.covered_nodes.begin(), trace.covered_nodes.end());
  return analyze(labels_from_coverage(cfg, covered), cfg);
}

std::string FuzzBudget::describe() const {
  std::string out;
  if (attempts) out += std::to_string(*attempts) + " attempts";
  if (wall) {
    if (!out.empty()) out += ", ";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%gs", wall->count());
    out += buf;
  }
  return out;
}

std::chrono::duration<double> parse_duration(const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad duration '" + text + "'");
  }
  const std::string unit_text = text.substr(used);
  double scale = 0.0;
  if (unit_text == "s" || unit_text.empty()) {
    scale = 1.0;
  } else if (unit_text == "ms") {
    scale = 1e-3;
  } else if (unit_text == "m") {
    scale = 60.0;
  } else {
    throw std::invalid_argument("bad duration unit in '" + text + "' (use ms, s or m)");
  }
  if (!(value >= 0.0) || !std::isfinite(value)) throw std::invalid_argument("duration must be >= 0");
  return std::chrono::duration<double>(value * scale);
}

FuzzReport fuzz(const FuzzTarget& target, const Detector& detector, InputGenerator& generator,
                const FuzzBudget& budget, std::uint64_t seed) {
  if (!budget.attempts && !budget.wall) throw std::invalid_argument("fuzz needs an attempt or time budget");
  FuzzReport r;
  r.budget = budget.describe();
  r.generator = generator.name();
  r.detector = detector.name();
  std::mt19937_64 rng(splitmix64(seed));
  std::vector<FuzzAttempt> history;
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start); };
  while (true) {
    if (budget.attempts && r.attempts >= *budget.attempts) break;
    if (budget.wall && elapsed() >= *budget.wall) break;
    std::optional<InputBindings> inputs = generator.next(target, history, rng);
    if (!inputs) {
      r.exhausted = true;
      break;
    }
    r.attempts += 1;
    ErrorVerdict v = detector.check(target, *inputs);
    history.push_back({*inputs, v});
    if (v.has_error) {
      r.found = true;
      r.verdict = v;
      r.triggering_inputs = *inputs;
      r.confirmed = execute(build_cfg(target.ast, *inputs), 100000).status == TraceStatus::Crashed;
      break;
    }
  }
  r.wall_seconds = elapsed().count();
  return r;
}

Json fuzz_report_to_json(const FuzzReport& r, bool include_time) {
  Json j;
  j["attempts"] = r.attempts;
  j["found"] = r.found;
  j["triggering_inputs"] = r.triggering_inputs ? inputs_to_json(*r.triggering_inputs) : Json(nullptr);
  j["verdict"] = verdict_to_json(r.verdict);
  j["confirmed_by_interpreter"] = r.confirmed ? Json(*r.confirmed) : Json(nullptr);
  j["exhausted"] = r.exhausted;
  j["budget"] = r.budget;
  j["generator"] = r.generator;
  j["detector"] = r.detector;
  j["workers"] = r.workers;
  if (include_time) j["wall_time_s"] = r.wall_seconds;
  return j;
}

}  // namespace flowcov
