#pragma once

#include <map>
#include <string>
#include <vector>

#include "flowcov/cfg.hpp"

namespace flowcov {

/// Token string <-> dense id. Ids 0..3 are always <pad>, <unk>, <begin>, <exit>.
class Vocab {
 public:
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr int kBegin = 2;
  static constexpr int kExit = 3;

  Vocab();
  /// Tokens in id order; must start with the four reserved tokens.
  explicit Vocab(std::vector<std::string> tokens);

  /// Unknown tokens map to <unk>.
  int id(const std::string& token) const;
  const std::string& token(int id) const { return tokens_.at(static_cast<std::size_t>(id)); }
  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  std::vector<int> encode(const std::vector<std::string>& tokens) const;

  bool operator==(const Vocab& o) const { return tokens_ == o.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::map<std::string, int> ids_;
};

/// Every token of every node label, ordered by (frequency desc, token asc)
/// after the reserved ids.
Vocab build_vocab(const std::vector<const Cfg*>& cfgs);

}  // namespace flowcov
