#pragma once

#include <fstream>
#include <sstream>
#include <string>

namespace flowcov::testing {

inline std::string read_sample(const std::string& name) {
  std::ifstream in(std::string(FLOWCOV_SAMPLES_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// The motivating example: a while loop with an if/else, a for loop and an
/// if/elif/else chain.
inline std::string branching_program() { return read_sample("branching.mpy"); }

}  // namespace flowcov::testing
