#include "flowcov/metrics.hpp"

#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

#include "flowcov/model.hpp"
#include "flowcov/parallel.hpp"

namespace flowcov {

namespace {

void check_lengths(const std::vector<std::vector<int>>& predicted, const std::vector<std::vector<int>>& truth) {
  if (predicted.size() != truth.size()) {
    throw std::invalid_argument(std::to_string(predicted.size()) + " predictions for " +
                                std::to_string(truth.size()) + " programs");
  }
  for (std::size_t p = 0; p < truth.size(); ++p) {
    if (predicted[p].size() != truth[p].size()) {
      throw std::invalid_argument("program " + std::to_string(p) + ": " + std::to_string(predicted[p].size()) +
                                  " predicted labels for " + std::to_string(truth[p].size()) + " nodes");
    }
  }
}

std::set<int> covered_lines(const std::vector<int>& labels, const Cfg& cfg) {
  std::set<int> lines;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!labels[i]) continue;
    if (auto line = cfg.line_of(static_cast<int>(i))) lines.insert(*line);
  }
  return lines;
}

Json fraction_json(const Fraction& f) {
  return {{"hits", f.hits}, {"total", f.total}, {"value", f.defined() ? Json(f.value()) : Json(nullptr)}};
}

std::string fraction_text(const Fraction& f) {
  if (!f.defined()) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f (%zu/%zu)", f.value(), f.hits, f.total);
  return buf;
}

}  // namespace

double Fraction::value() const {
  if (total == 0) throw std::domain_error("fraction over an empty set");
  return static_cast<double>(hits) / static_cast<double>(total);
}

Fraction exact_match(const std::vector<std::vector<int>>& predicted, const std::vector<std::vector<int>>& truth) {
  check_lengths(predicted, truth);
  Fraction f;
  for (std::size_t p = 0; p < truth.size(); ++p) {
    f.total += 1;
    f.hits += predicted[p] == truth[p] ? 1 : 0;
  }
  return f;
}

Fraction branch_correctness(const std::vector<std::vector<int>>& predicted,
                            const std::vector<std::vector<int>>& truth, const std::vector<const Cfg*>& cfgs,
                            bool include_uncovered) {
  check_lengths(predicted, truth);
  if (cfgs.size() != truth.size()) throw std::invalid_argument("one graph per program is required");
  Fraction f;
  for (std::size_t p = 0; p < truth.size(); ++p) {
    const Cfg& cfg = *cfgs[p];
    if (cfg.size() != truth[p].size()) throw std::invalid_argument("program " + std::to_string(p) + ": graph size");
    for (const CfgNode& n : cfg.nodes()) {
      if (n.kind != NodeKind::Condition) continue;
      if (!include_uncovered && !truth[p][static_cast<std::size_t>(n.index)]) continue;
      bool same = true;
      for (int s : cfg.forward_successors(n.index)) {
        same &= predicted[p][static_cast<std::size_t>(s)] == truth[p][static_cast<std::size_t>(s)];
      }
      f.total += 1;
      f.hits += same ? 1 : 0;
    }
  }
  return f;
}

Prf1 prf1(const std::vector<std::vector<int>>& predicted, const std::vector<std::vector<int>>& truth) {
  check_lengths(predicted, truth);
  Prf1 r;
  for (std::size_t p = 0; p < truth.size(); ++p) {
    for (std::size_t i = 0; i < truth[p].size(); ++i) {
      const bool pr = predicted[p][i] != 0, tr = truth[p][i] != 0;
      r.true_positive += pr && tr;
      r.false_positive += pr && !tr;
      r.false_negative += !pr && tr;
    }
  }
  const double tp = static_cast<double>(r.true_positive);
  if (r.true_positive + r.false_positive > 0) r.precision = tp / static_cast<double>(r.true_positive + r.false_positive);
  if (r.true_positive + r.false_negative > 0) r.recall = tp / static_cast<double>(r.true_positive + r.false_negative);
  if (r.precision + r.recall > 0) r.f1 = 2 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

Fraction eda(const std::vector<bool>& predicted_error, const std::vector<bool>& true_error) {
  if (predicted_error.size() != true_error.size()) throw std::invalid_argument("eda: length mismatch");
  if (true_error.empty()) throw std::invalid_argument("eda of an empty set is undefined");
  Fraction f;
  for (std::size_t p = 0; p < true_error.size(); ++p) {
    f.total += 1;
    f.hits += predicted_error[p] == true_error[p] ? 1 : 0;
  }
  return f;
}

Fraction ela(const std::vector<std::optional<int>>& predicted_lines,
             const std::vector<std::optional<int>>& true_lines) {
  if (predicted_lines.size() != true_lines.size()) throw std::invalid_argument("ela: length mismatch");
  Fraction f;
  for (std::size_t p = 0; p < true_lines.size(); ++p) {
    if (!true_lines[p]) continue;
    f.total += 1;
    f.hits += predicted_lines[p] == true_lines[p] ? 1 : 0;
  }
  return f;
}

Fraction exact_match_lines(const std::vector<std::vector<int>>& predicted, const std::vector<std::vector<int>>& truth,
                           const std::vector<const Cfg*>& cfgs) {
  check_lengths(predicted, truth);
  if (cfgs.size() != truth.size()) throw std::invalid_argument("one graph per program is required");
  Fraction f;
  for (std::size_t p = 0; p < truth.size(); ++p) {
    f.total += 1;
    f.hits += covered_lines(predicted[p], *cfgs[p]) == covered_lines(truth[p], *cfgs[p]) ? 1 : 0;
  }
  return f;
}

MetricsReport evaluate_labels(const std::vector<DatasetRecord>& records,
                              const std::vector<std::vector<int>>& predicted, bool bc_all) {
  if (records.empty()) throw std::invalid_argument("cannot evaluate an empty dataset");
  std::vector<std::vector<int>> truth, all_ones;
  std::vector<const Cfg*> cfgs;
  for (const auto& r : records) {
    truth.push_back(labels_from_coverage(r.cfg, r.covered_nodes));
    all_ones.emplace_back(r.cfg.size(), 1);
    cfgs.push_back(&r.cfg);
  }
  MetricsReport m;
  m.programs = records.size();
  m.bc_all = bc_all;
  m.em = exact_match(predicted, truth);
  m.em_lines = exact_match_lines(predicted, truth, cfgs);
  m.bc = branch_correctness(predicted, truth, cfgs, bc_all);
  m.prf = prf1(predicted, truth);
  m.baseline_em = exact_match(all_ones, truth);
  for (std::size_t p = 0; p < truth.size(); ++p) {
    for (std::size_t i = 0; i < truth[p].size(); ++i) {
      m.node_accuracy.total += 1;
      m.node_accuracy.hits += predicted[p][i] == truth[p][i] ? 1 : 0;
    }
  }

  // Error metrics skip runs that hit the step limit: they neither crashed nor
  // reached EXIT.
  std::vector<bool> pred_err, true_err;
  std::vector<std::optional<int>> pred_lines, true_lines;
  for (std::size_t p = 0; p < records.size(); ++p) {
    const DatasetRecord& r = records[p];
    if (r.status == TraceStatus::StepLimitExceeded) continue;
    const ErrorVerdict v = analyze(predicted[p], r.cfg);
    pred_err.push_back(v.has_error);
    true_err.push_back(r.status == TraceStatus::Crashed);
    pred_lines.push_back(v.crash_line);
    true_lines.push_back(r.status == TraceStatus::Crashed ? r.crash_line : std::nullopt);
    if (r.status == TraceStatus::Crashed && r.error_kind) m.error_kinds[to_string(*r.error_kind)] += 1;
  }
  if (!true_err.empty()) m.eda = eda(pred_err, true_err);
  m.ela = ela(pred_lines, true_lines);
  return m;
}

MetricsReport evaluate(const CoverageModel& model, const std::vector<DatasetRecord>& records, double alpha,
                       bool bc_all, unsigned jobs) {
  std::vector<std::vector<int>> predicted(records.size());
  parallel_for(records.size(), jobs, [&](std::size_t i) { predicted[i] = model.predict(records[i].cfg, alpha).labels; });
  return evaluate_labels(records, predicted, bc_all);
}

Json report_to_json(const MetricsReport& r) {
  Json j;
  j["programs"] = r.programs;
  j["em"] = fraction_json(r.em);
  j["em_lines"] = fraction_json(r.em_lines);
  j["bc"] = fraction_json(r.bc);
  j["bc_all"] = r.bc_all;
  j["precision"] = r.prf.precision;
  j["recall"] = r.prf.recall;
  j["f1"] = r.prf.f1;
  j["node_counts"] = {{"true_positive", r.prf.true_positive},
                      {"false_positive", r.prf.false_positive},
                      {"false_negative", r.prf.false_negative}};
  j["node_accuracy"] = fraction_json(r.node_accuracy);
  j["eda"] = fraction_json(r.eda);
  j["ela"] = fraction_json(r.ela);
  j["baseline_all_covered_em"] = fraction_json(r.baseline_em);
  j["error_kinds"] = r.error_kinds;
  return j;
}

std::string report_to_table(const MetricsReport& r) {
  std::vector<std::pair<std::string, std::string>> rows;
  char buf[32];
  auto real = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return std::string(buf);
  };
  rows.emplace_back("programs", std::to_string(r.programs));
  rows.emplace_back("EM", fraction_text(r.em));
  rows.emplace_back("EM (lines)", fraction_text(r.em_lines));
  rows.emplace_back(r.bc_all ? "BC (all conditions)" : "BC", fraction_text(r.bc));
  rows.emplace_back("precision", real(r.prf.precision));
  rows.emplace_back("recall", real(r.prf.recall));
  rows.emplace_back("F1", real(r.prf.f1));
  rows.emplace_back("node accuracy", fraction_text(r.node_accuracy));
  rows.emplace_back("EDA", fraction_text(r.eda));
  rows.emplace_back("ELA", fraction_text(r.ela));
  rows.emplace_back("all-covered EM", fraction_text(r.baseline_em));
  for (const auto& [kind, n] : r.error_kinds) rows.emplace_back("errors: " + kind, std::to_string(n));
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  std::ostringstream out;
  for (const auto& [k, v] : rows) out << k << std::string(width - k.size() + 2, ' ') << v << "\n";
  return out.str();
}

}  // namespace flowcov
