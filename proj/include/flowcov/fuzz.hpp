#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "flowcov/analyzer.hpp"
#include "flowcov/ast.hpp"
#include "flowcov/dataset.hpp"
#include "flowcov/serialize.hpp"
#include "flowcov/value.hpp"

namespace flowcov {

class CoverageModel;

/// What the fuzzer varies: a parsed program and the inputs to bind. Each
/// input's template value fixes its kind (int, bool, str or list).
struct FuzzTarget {
  std::string source;
  Ast ast;
  InputBindings input_kinds;
};

/// Parses `source` (ParseError propagates). Inputs are the keys of `kinds`
/// when given, otherwise the program's free variables typed as int.
FuzzTarget make_fuzz_target(std::string source, const InputBindings& kinds = {});

struct FuzzAttempt {
  InputBindings inputs;
  ErrorVerdict verdict;
};

/// Proposes the next input. Implementations must not return an input that is
/// already in `history`; nullopt means no untried input is left.
class InputGenerator {
 public:
  virtual ~InputGenerator() = default;
  virtual std::string name() const = 0;
  virtual std::optional<InputBindings> next(const FuzzTarget& target, const std::vector<FuzzAttempt>& history,
                                            std::mt19937_64& rng) = 0;
};

/// Ints uniform over a range, except that with probability `boundary_bias`
/// one of -1, 0, 1 is drawn instead.
class RandomInputGenerator : public InputGenerator {
 public:
  explicit RandomInputGenerator(IntRange ints = {-10, 100}, double boundary_bias = 0.3, int max_draws = 1000);
  std::string name() const override { return "random"; }
  std::optional<InputBindings> next(const FuzzTarget& target, const std::vector<FuzzAttempt>& history,
                                    std::mt19937_64& rng) override;

  /// One fresh draw, ignoring history.
  InputBindings draw(const FuzzTarget& target, std::mt19937_64& rng) const;

 private:
  IntRange ints_;
  double boundary_bias_;
  int max_draws_;
};

/// Test double: samples candidates like the random generator, runs each
/// through the interpreter and proposes the first one that crashes (or the
/// first candidate when none does).
class OracleInputGenerator : public InputGenerator {
 public:
  explicit OracleInputGenerator(int probes = 64, RandomInputGenerator base = RandomInputGenerator());
  std::string name() const override { return "oracle"; }
  std::optional<InputBindings> next(const FuzzTarget& target, const std::vector<FuzzAttempt>& history,
                                    std::mt19937_64& rng) override;

 private:
  int probes_;
  RandomInputGenerator base_;
};

/// Decides whether a program run on given inputs has a runtime error.
class Detector {
 public:
  virtual ~Detector() = default;
  virtual std::string name() const = 0;
  virtual ErrorVerdict check(const FuzzTarget& target, const InputBindings& inputs) const = 0;
};

/// Predicted coverage -> detect / localize.
class ModelDetector : public Detector {
 public:
  ModelDetector(const CoverageModel& model, double alpha);
  std::string name() const override { return "model"; }
  ErrorVerdict check(const FuzzTarget& target, const InputBindings& inputs) const override;

 private:
  const CoverageModel& model_;
  double alpha_;
};

/// True coverage from the interpreter -> detect / localize. Runs that hit the
/// step limit count as clean.
class OracleDetector : public Detector {
 public:
  explicit OracleDetector(std::size_t step_limit = 100000) : step_limit_(step_limit) {}
  std::string name() const override { return "oracle"; }
  ErrorVerdict check(const FuzzTarget& target, const InputBindings& inputs) const override;

 private:
  std::size_t step_limit_;
};

/// Stops after `attempts` tries or `wall` time, whichever comes first. At
/// least one must be set.
struct FuzzBudget {
  std::optional<std::size_t> attempts;
  std::optional<std::chrono::duration<double>> wall;

  std::string describe() const;
};

/// "30s", "500ms", "2m", "1.5s" -> seconds. Throws std::invalid_argument.
std::chrono::duration<double> parse_duration(const std::string& text);

struct FuzzReport {
  std::size_t attempts = 0;
  bool found = false;
  std::optional<InputBindings> triggering_inputs;
  ErrorVerdict verdict;
  /// Whether the interpreter agrees that the triggering inputs crash.
  std::optional<bool> confirmed;
  /// The generator ran out of untried inputs before the budget did.
  bool exhausted = false;
  double wall_seconds = 0.0;
  std::string budget;
  std::string generator;
  std::string detector;
  std::size_t workers = 1;
};

/// Generate, check, repeat until the detector reports an error or the budget
/// runs out. Given an attempt budget the result depends only on `seed`.
FuzzReport fuzz(const FuzzTarget& target, const Detector& detector, InputGenerator& generator,
                const FuzzBudget& budget, std::uint64_t seed);

/// Field order is fixed; `wall_time_s` is omitted when `include_time` is false
/// so attempt-budget reports compare byte for byte.
Json fuzz_report_to_json(const FuzzReport& r, bool include_time = true);

}  // namespace flowcov
