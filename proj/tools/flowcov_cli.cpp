#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "flowcov/analyzer.hpp"
#include "flowcov/cfg.hpp"
#include "flowcov/dataset.hpp"
#include "flowcov/dot.hpp"
#include "flowcov/frontend.hpp"
#include "flowcov/fuzz.hpp"
#include "flowcov/interpreter.hpp"
#include "flowcov/metrics.hpp"
#include "flowcov/model.hpp"
#include "flowcov/serialize.hpp"

namespace {

using namespace flowcov;

// Exit codes.
constexpr int kUsage = 1;
constexpr int kDataError = 2;
constexpr int kInternal = 3;

/// Bad flag values found after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// "-" means stdout.
void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << text;
}

InputBindings parse_inputs(const std::vector<std::string>& pairs) {
  InputBindings out;
  for (const auto& p : pairs) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--input expects name=value, got '" + p + "'");
    try {
      out[p.substr(0, eq)] = parse_literal(p.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw UsageError("--input " + p + ": " + e.what());
    }
  }
  return out;
}

void print_json(const Json& j) { std::cout << dump_pretty(j); }

struct ProgramArgs {
  std::string file;
  std::vector<std::string> inputs;
};

void add_program_args(CLI::App* sub, ProgramArgs& a) {
  sub->add_option("FILE", a.file, "MiniPy source file")->required();
  sub->add_option("--input", a.inputs, "Input binding name=value (repeatable)");
}

struct Program {
  std::string source;
  Ast ast;
  InputBindings inputs;
  Cfg cfg;
};

Program load_program(const ProgramArgs& a) {
  Program p;
  p.inputs = parse_inputs(a.inputs);
  p.source = read_file(a.file);
  p.ast = parse(p.source);
  p.cfg = build_cfg(p.ast, p.inputs);
  return p;
}

// ---------------------------------------------------------------------------

struct BuildCfgArgs {
  ProgramArgs program;
  std::string dot;
  std::string json;
};

void run_build_cfg(const BuildCfgArgs& a) {
  const Program p = load_program(a.program);
  if (!a.dot.empty()) write_text(a.dot, export_dot(p.cfg));
  if (!a.json.empty()) write_text(a.json, dump_pretty(cfg_to_json(p.cfg)));
  if (a.dot.empty() && a.json.empty()) print_json(cfg_to_json(p.cfg));
}

struct TraceArgs {
  ProgramArgs program;
  std::size_t step_limit = kDefaultStepLimit;
};

void run_trace(const TraceArgs& a) {
  const Program p = load_program(a.program);
  print_json(trace_to_json(execute(p.ast, p.cfg, p.inputs, a.step_limit), p.cfg));
}

struct GenArgs {
  GenConfig config;
  std::string out;
  unsigned jobs = 1;
};

void run_gen(const GenArgs& a) {
  try {
    a.config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto records = generate(a.config, a.jobs);
  write_jsonl(a.out, records);
  std::size_t crashed = 0;
  for (const auto& r : records) crashed += r.status == TraceStatus::Crashed;
  print_json({{"records", records.size()}, {"crashed", crashed}, {"out", a.out}, {"seed", a.config.seed}});
}

struct SplitArgs {
  std::string in, train_out, test_out;
  double frac = 0.8;
  std::uint64_t seed = 0;
};

void run_split(const SplitArgs& a) {
  if (!(a.frac > 0.0 && a.frac < 1.0)) throw UsageError("--frac must lie in (0, 1)");
  auto [train, test] = split(read_jsonl(a.in), a.frac, a.seed);
  write_jsonl(a.train_out, train);
  write_jsonl(a.test_out, test);
  print_json({{"train", train.size()}, {"test", test.size()}});
}

struct TrainArgs {
  TrainConfig config;
  std::string precision = "float64";
  std::string data, out, log;
};

void run_train(TrainArgs a) {
  try {
    a.config.precision = precision_from_string(a.precision);
    a.config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto records = read_jsonl(a.data);
  std::ofstream log_file;
  std::ostream* log = &std::cerr;
  if (!a.log.empty()) {
    log_file.open(a.log);
    if (!log_file) throw DataError("cannot write " + a.log);
    log = &log_file;
  }
  *log << "epoch,mean_loss\n";
  const TrainResult r = train(records, a.config, [&](const EpochStats& s) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%d,%.8f\n", s.epoch, s.mean_loss);
    *log << buf << std::flush;
  });
  r.model.save(a.out);
  Json summary{{"model", a.out},
               {"records", records.size()},
               {"epochs", a.config.epochs},
               {"parameters", r.model.parameter_count()},
               {"vocab", r.model.vocab().size()},
               {"final_loss", r.epochs.empty() ? Json(nullptr) : Json(r.epochs.back().mean_loss)}};
  print_json(summary);
}

struct PredictArgs {
  ProgramArgs program;
  std::string model;
  double alpha = kDefaultAlpha;
  std::string dot;
};

enum class PredictMode { Predict, Detect, Localize };

void run_predict(const PredictArgs& a, PredictMode mode) {
  if (!(a.alpha >= 0.0 && a.alpha <= 1.0)) throw UsageError("--alpha must lie in [0, 1]");
  const Program p = load_program(a.program);
  const CoverageModel model = CoverageModel::load(a.model);
  const Prediction pred = model.predict(p.cfg, a.alpha);
  if (!a.dot.empty()) write_text(a.dot, export_dot(p.cfg, pred.scores, pred.labels));
  const ErrorVerdict verdict = analyze(pred.labels, p.cfg);
  if (mode != PredictMode::Predict) {
    Json j = verdict_to_json(verdict);
    if (mode == PredictMode::Localize && !verdict.has_error) j["note"] = "EXIT predicted covered; nothing to localize";
    print_json(j);
    return;
  }
  Json nodes = Json::array();
  std::vector<int> covered_nodes;
  std::set<int> covered_lines;
  for (std::size_t i = 0; i < pred.scores.size(); ++i) {
    const int idx = static_cast<int>(i);
    const auto line = p.cfg.line_of(idx);
    nodes.push_back({{"index", idx},
                     {"label", p.cfg.node(idx).label},
                     {"line", line ? Json(*line) : Json(nullptr)},
                     {"score", pred.scores[i]},
                     {"covered", pred.labels[i] == 1}});
    if (pred.labels[i]) {
      covered_nodes.push_back(idx);
      if (line) covered_lines.insert(*line);
    }
  }
  Json edges = Json::array();
  for (const CfgEdge& e : pred.surviving) edges.push_back({e.src, e.dst});
  print_json({{"alpha", a.alpha},
              {"nodes", nodes},
              {"covered_nodes", covered_nodes},
              {"covered_lines", covered_lines},
              {"surviving_edges", edges},
              {"verdict", verdict_to_json(verdict)}});
}

struct EvalArgs {
  std::string model, data;
  double alpha = kDefaultAlpha;
  bool bc_all = false;
  unsigned jobs = 1;
};

void run_eval(const EvalArgs& a) {
  if (!(a.alpha >= 0.0 && a.alpha <= 1.0)) throw UsageError("--alpha must lie in [0, 1]");
  const CoverageModel model = CoverageModel::load(a.model);
  const auto records = read_jsonl(a.data);
  const MetricsReport r = evaluate(model, records, a.alpha, a.bc_all, a.jobs);
  std::cerr << report_to_table(r);
  print_json(report_to_json(r));
}

struct FuzzArgs {
  ProgramArgs program;
  std::string model;
  std::string budget;
  std::size_t attempts = 0;
  std::uint64_t seed = 0;
  double alpha = kDefaultAlpha;
  std::string detector = "model";
  std::string generator = "random";
};

void run_fuzz(const FuzzArgs& a, bool attempts_given) {
  FuzzBudget budget;
  try {
    if (!a.budget.empty()) budget.wall = parse_duration(a.budget);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (attempts_given) budget.attempts = a.attempts;
  if (!budget.wall && !budget.attempts) throw UsageError("fuzz needs --budget or --attempts");
  if (a.detector == "model" && a.model.empty()) throw UsageError("--model is required with the model detector");
  if (!(a.alpha >= 0.0 && a.alpha <= 1.0)) throw UsageError("--alpha must lie in [0, 1]");

  const FuzzTarget target = make_fuzz_target(read_file(a.program.file), parse_inputs(a.program.inputs));
  std::unique_ptr<InputGenerator> generator;
  if (a.generator == "random") {
    generator = std::make_unique<RandomInputGenerator>();
  } else {
    generator = std::make_unique<OracleInputGenerator>();
  }
  std::optional<CoverageModel> model;
  std::unique_ptr<Detector> detector;
  if (a.detector == "model") {
    model = CoverageModel::load(a.model);
    detector = std::make_unique<ModelDetector>(*model, a.alpha);
  } else {
    detector = std::make_unique<OracleDetector>();
  }
  const FuzzReport r = fuzz(target, *detector, *generator, budget, a.seed);
  // Attempt-only budgets are reproducible; keep their output byte-stable.
  print_json(fuzz_report_to_json(r, budget.wall.has_value()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coverage prediction, runtime-error detection and fuzzing for MiniPy programs"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value file supplying flag defaults ([subcommand] sections)");

  BuildCfgArgs build_args;
  auto* build = app.add_subcommand("build-cfg", "Build the control-flow graph of a program");
  add_program_args(build, build_args.program);
  build->add_option("--dot", build_args.dot, "Write Graphviz DOT here ('-' for stdout)");
  build->add_option("--json", build_args.json, "Write the graph as JSON here ('-' for stdout)");

  TraceArgs trace_args;
  auto* trace = app.add_subcommand("trace", "Run a program and print its execution trace");
  add_program_args(trace, trace_args.program);
  trace->add_option("--step-limit", trace_args.step_limit, "Maximum node visits")->check(CLI::PositiveNumber);

  GenArgs gen_args;
  GenConfig& g = gen_args.config;
  auto* gen = app.add_subcommand("gen-dataset", "Generate a labeled synthetic dataset (JSONL)");
  gen->add_option("--count", g.count, "Number of records")->capture_default_str();
  gen->add_option("--seed", g.seed, "Generator seed")->capture_default_str();
  gen->add_option("--bug-rate", g.bug_injection_rate, "Probability of injecting a crash")->capture_default_str();
  gen->add_option("--out", gen_args.out, "Output JSONL path")->required();
  gen->add_option("--stmt-min", g.stmt_range.min, "Fewest top-level statements")->capture_default_str();
  gen->add_option("--stmt-max", g.stmt_range.max, "Most top-level statements")->capture_default_str();
  gen->add_option("--max-nesting", g.max_nesting, "Deepest block nesting")->capture_default_str();
  gen->add_option("--loop-min", g.loop_bound_range.min, "Smallest loop bound / int input")->capture_default_str();
  gen->add_option("--loop-max", g.loop_bound_range.max, "Largest loop bound / int input")->capture_default_str();
  gen->add_option("--int-min", g.int_literal_range.min, "Smallest int literal")->capture_default_str();
  gen->add_option("--int-max", g.int_literal_range.max, "Largest int literal")->capture_default_str();
  gen->add_option("--list-min", g.list_length_range.min, "Shortest list literal")->capture_default_str();
  gen->add_option("--list-max", g.list_length_range.max, "Longest list literal")->capture_default_str();
  gen->add_option("--max-nodes", g.max_nodes, "Largest CFG accepted")->capture_default_str();
  gen->add_option("--step-limit", g.step_limit, "Largest ground-truth run accepted")->capture_default_str();
  gen->add_option("--jobs", gen_args.jobs, "Worker threads (output does not depend on it)")->check(CLI::PositiveNumber);

  SplitArgs split_args;
  auto* split_cmd = app.add_subcommand("split", "Shuffle and split a dataset");
  split_cmd->add_option("--in", split_args.in, "Input JSONL")->required();
  split_cmd->add_option("--frac", split_args.frac, "Fraction sent to the training split")->capture_default_str();
  split_cmd->add_option("--seed", split_args.seed, "Shuffle seed")->capture_default_str();
  split_cmd->add_option("--train-out", split_args.train_out, "Training split path")->required();
  split_cmd->add_option("--test-out", split_args.test_out, "Test split path")->required();

  TrainArgs train_args;
  TrainConfig& t = train_args.config;
  auto* train_cmd = app.add_subcommand("train", "Train a coverage model");
  train_cmd->add_option("--data", train_args.data, "Training JSONL")->required();
  train_cmd->add_option("--out", train_args.out, "Checkpoint path")->required();
  train_cmd->add_option("--epochs", t.epochs)->capture_default_str();
  train_cmd->add_option("--lr", t.lr)->capture_default_str();
  train_cmd->add_option("--beta1", t.beta1)->capture_default_str();
  train_cmd->add_option("--beta2", t.beta2)->capture_default_str();
  train_cmd->add_option("--embed", t.embed, "Token embedding width")->capture_default_str();
  train_cmd->add_option("--hidden", t.hidden, "Hidden state width")->capture_default_str();
  train_cmd->add_option("--alpha", t.alpha, "Coverage threshold")->capture_default_str();
  train_cmd->add_option("--seed", t.seed, "Initialization and shuffle seed")->capture_default_str();
  train_cmd->add_option("--precision", train_args.precision, "float32 or float64")->capture_default_str();
  train_cmd->add_option("--passes", t.passes, "Propagation sweeps (experimental)")->capture_default_str();
  train_cmd->add_option("--log", train_args.log, "CSV loss log path (default: stderr)");

  PredictArgs predict_args;
  auto* predict = app.add_subcommand("predict", "Predict node coverage");
  auto* detect = app.add_subcommand("detect", "Predict whether the program crashes");
  auto* localize = app.add_subcommand("localize", "Predict where the program crashes");
  for (auto* sub : {predict, detect, localize}) {
    add_program_args(sub, predict_args.program);
    sub->add_option("--model", predict_args.model, "Checkpoint")->required();
    sub->add_option("--alpha", predict_args.alpha, "Coverage threshold")->capture_default_str();
  }
  predict->add_option("--dot", predict_args.dot, "Write a score heatmap DOT here ('-' for stdout)");

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Score a model on a labeled dataset");
  eval->add_option("--model", eval_args.model, "Checkpoint")->required();
  eval->add_option("--data", eval_args.data, "Labeled JSONL")->required();
  eval->add_option("--alpha", eval_args.alpha, "Coverage threshold")->capture_default_str();
  eval->add_flag("--bc-all", eval_args.bc_all, "Count uncovered condition nodes in BC too");
  eval->add_option("--jobs", eval_args.jobs, "Worker threads")->check(CLI::PositiveNumber);

  FuzzArgs fuzz_args;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Search for inputs the detector flags as crashing");
  fuzz_cmd->add_option("FILE", fuzz_args.program.file, "MiniPy source file")->required();
  fuzz_cmd->add_option("--input", fuzz_args.program.inputs,
                       "Input template name=value; its literal kind fixes the kind sampled (default: free variables as int)");
  fuzz_cmd->add_option("--model", fuzz_args.model, "Checkpoint (model detector)");
  fuzz_cmd->add_option("--budget", fuzz_args.budget, "Wall-time budget such as 30s, 500ms, 2m");
  auto* attempts_opt = fuzz_cmd->add_option("--attempts", fuzz_args.attempts, "Attempt budget (deterministic)");
  fuzz_cmd->add_option("--seed", fuzz_args.seed, "Generator seed")->capture_default_str();
  fuzz_cmd->add_option("--alpha", fuzz_args.alpha, "Coverage threshold")->capture_default_str();
  fuzz_cmd->add_option("--detector", fuzz_args.detector, "model or oracle (interpreter)")
      ->check(CLI::IsMember({"model", "oracle"}))
      ->capture_default_str();
  fuzz_cmd->add_option("--generator", fuzz_args.generator, "random or oracle")
      ->check(CLI::IsMember({"random", "oracle"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*build) run_build_cfg(build_args);
    if (*trace) run_trace(trace_args);
    if (*gen) run_gen(gen_args);
    if (*split_cmd) run_split(split_args);
    if (*train_cmd) run_train(train_args);
    if (*predict) run_predict(predict_args, PredictMode::Predict);
    if (*detect) run_predict(predict_args, PredictMode::Detect);
    if (*localize) run_predict(predict_args, PredictMode::Localize);
    if (*eval) run_eval(eval_args);
    if (*fuzz_cmd) run_fuzz(fuzz_args, attempts_opt->count() > 0);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kDataError;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const CfgError& e) {
    std::cerr << "graph error: " << e.what() << "\n";
    return kDataError;
  } catch (const GenerationExhausted& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return 0;
}
