#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "flowcov/cfg.hpp"
#include "flowcov/interpreter.hpp"
#include "flowcov/serialize.hpp"
#include "flowcov/value.hpp"

namespace flowcov {

struct IntRange {
  std::int64_t min = 0;
  std::int64_t max = 0;
};

struct GenConfig {
  std::uint64_t seed = 0;
  std::size_t count = 100;
  /// Number of top-level statements.
  IntRange stmt_range{3, 7};
  /// Deepest block nesting of if / while / for.
  int max_nesting = 2;
  /// Values of int inputs and literal loop bounds.
  IntRange loop_bound_range{0, 8};
  double bug_injection_rate = 0.3;
  IntRange int_literal_range{0, 12};
  IntRange list_length_range{2, 5};
  /// Programs whose CFG has more nodes than this are resampled.
  std::size_t max_nodes = 48;
  /// Ground-truth runs above this many node visits are resampled.
  std::size_t step_limit = 5000;

  /// Throws std::invalid_argument describing the first bad field.
  void validate() const;
};

class GenerationExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DatasetRecord {
  std::string id;
  std::string source;
  InputBindings inputs;
  Cfg cfg;
  std::vector<int> covered_nodes;  // sorted
  std::vector<int> covered_lines;  // sorted
  TraceStatus status = TraceStatus::Normal;
  std::optional<int> crash_node;
  std::optional<int> crash_line;
  std::optional<ErrorKind> error_kind;
};

bool operator==(const DatasetRecord& a, const DatasetRecord& b);

/// Parses, builds and runs (source, inputs) and fills in every label.
DatasetRecord label_program(std::string id, std::string source, InputBindings inputs,
                            std::size_t step_limit = kDefaultStepLimit);

/// Exactly config.count records; record i depends only on (seed, i).
std::vector<DatasetRecord> generate(const GenConfig& config, unsigned jobs = 1);

Json record_to_json(const DatasetRecord& record);
/// Rebuilds the CFG from the stored source and inputs and checks it against
/// the stored one. Throws DataError.
DatasetRecord record_from_json(const Json& j);

void write_jsonl(std::ostream& out, const std::vector<DatasetRecord>& records);
void write_jsonl(const std::filesystem::path& path, const std::vector<DatasetRecord>& records);
/// Throws DataError naming the 1-based line of the first malformed record.
std::vector<DatasetRecord> read_jsonl(std::istream& in);
std::vector<DatasetRecord> read_jsonl(const std::filesystem::path& path);

/// Seeded shuffle, then the first floor(n * fraction) records go to train.
std::pair<std::vector<DatasetRecord>, std::vector<DatasetRecord>> split(std::vector<DatasetRecord> records,
                                                                          double fraction, std::uint64_t seed);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace flowcov
