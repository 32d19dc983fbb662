#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flowcov/analyzer.hpp"
#include "flowcov/cfg.hpp"
#include "flowcov/dataset.hpp"
#include "flowcov/serialize.hpp"

namespace flowcov {

class CoverageModel;

/// hits / total. value() of an empty fraction is undefined and throws.
struct Fraction {
  std::size_t hits = 0;
  std::size_t total = 0;

  double value() const;
  bool defined() const { return total > 0; }
  Fraction& operator+=(const Fraction& o) {
    hits += o.hits;
    total += o.total;
    return *this;
  }
};

struct Prf1 {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t true_positive = 0;
  std::size_t false_positive = 0;
  std::size_t false_negative = 0;
};

// Per-program label vectors are 0/1 per node; predicted and true vectors of
// a program must have equal length.

Fraction exact_match(const std::vector<std::vector<int>>& predicted, const std::vector<std::vector<int>>& truth);

/// Condition nodes whose pair of forward successors has the same predicted and
/// true coverage. Only truly covered conditions count unless `include_uncovered`.
Fraction branch_correctness(const std::vector<std::vector<int>>& predicted,
                            const std::vector<std::vector<int>>& truth, const std::vector<const Cfg*>& cfgs,
                            bool include_uncovered = false);

/// Pooled over every node of every program. Undefined precision or recall
/// is reported as 0.
Prf1 prf1(const std::vector<std::vector<int>>& predicted, const std::vector<std::vector<int>>& truth);

/// Fraction of programs whose error verdict matches. Throws on empty input.
Fraction eda(const std::vector<bool>& predicted_error, const std::vector<bool>& true_error);

/// Over truly crashing programs (those with a true line): fraction whose
/// predicted crash line equals the true one.
Fraction ela(const std::vector<std::optional<int>>& predicted_lines,
             const std::vector<std::optional<int>>& true_lines);

/// Exact match on covered source lines instead of nodes.
Fraction exact_match_lines(const std::vector<std::vector<int>>& predicted, const std::vector<std::vector<int>>& truth,
                           const std::vector<const Cfg*>& cfgs);

struct MetricsReport {
  std::size_t programs = 0;
  Fraction em;
  Fraction em_lines;
  Fraction bc;
  bool bc_all = false;
  Prf1 prf;
  Fraction node_accuracy;
  Fraction eda;
  Fraction ela;
  /// EM of predicting every node covered.
  Fraction baseline_em;
  /// Interpreter error kinds of the truly crashing programs.
  std::map<std::string, std::size_t> error_kinds;
};

/// All metrics for per-record predicted labels against the records' truth.
MetricsReport evaluate_labels(const std::vector<DatasetRecord>& records,
                              const std::vector<std::vector<int>>& predicted, bool bc_all = false);

/// Runs the model on every record (in parallel with `jobs` workers; results
/// do not depend on it) and scores the predictions.
MetricsReport evaluate(const CoverageModel& model, const std::vector<DatasetRecord>& records, double alpha,
                       bool bc_all = false, unsigned jobs = 1);

Json report_to_json(const MetricsReport& r);
/// Aligned two-column text table.
std::string report_to_table(const MetricsReport& r);

}  // namespace flowcov
