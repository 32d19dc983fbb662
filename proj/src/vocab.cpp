#include "flowcov/vocab.hpp"

#include <algorithm>
#include <stdexcept>

namespace flowcov {

namespace {
const std::vector<std::string> kReserved = {"<pad>", "<unk>", "<begin>", "<exit>"};
}

Vocab::Vocab() : Vocab(kReserved) {}

Vocab::Vocab(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.size() < kReserved.size() || !std::equal(kReserved.begin(), kReserved.end(), tokens_.begin())) {
    throw std::invalid_argument("vocab must start with <pad>, <unk>, <begin>, <exit>");
  }
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (!ids_.emplace(tokens_[i], static_cast<int>(i)).second) {
      throw std::invalid_argument("duplicate vocab token '" + tokens_[i] + "'");
    }
  }
}

int Vocab::id(const std::string& token) const {
  auto it = ids_.find(token);
  return it == ids_.end() ? kUnk : it->second;
}

std::vector<int> Vocab::encode(const std::vector<std::string>& tokens) const {
  std::vector<int> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(id(t));
  return out;
}

Vocab build_vocab(const std::vector<const Cfg*>& cfgs) {
  std::map<std::string, long> freq;
  for (const Cfg* cfg : cfgs) {
    for (const CfgNode& n : cfg->nodes()) {
      for (const auto& t : n.tokens) ++freq[t];
    }
  }
  for (const auto& r : kReserved) freq.erase(r);
  std::vector<std::pair<std::string, long>> items(freq.begin(), freq.end());
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> tokens = kReserved;
  for (const auto& [tok, count] : items) tokens.push_back(tok);
  return Vocab(std::move(tokens));
}

}  // namespace flowcov
