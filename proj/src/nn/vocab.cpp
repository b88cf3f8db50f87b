// SPDX-License-Identifier: Apache-2.0
#include "apirec/nn/vocab.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace apirec::nn {

Vocab::Vocab() : Vocab(std::vector<std::string>{}) {}

Vocab::Vocab(const std::vector<std::string>& items) {
  items_.emplace_back(kUnkText);
  for (const auto& s : items) {
    if (s == kUnkText) continue;
    if (!index_.emplace(s, static_cast<int>(items_.size())).second)
      throw std::invalid_argument("duplicate vocabulary entry '" + s + "'");
    items_.push_back(s);
  }
}

int Vocab::lookup(std::string_view s) const {
  auto it = index_.find(std::string(s));
  return it == index_.end() ? kUnk : it->second;
}

ModelVocabs ModelVocabs::build(const std::vector<TrainingInstance>& train, int min_class_freq) {
  std::set<std::string> labels, tokens;
  std::map<std::string, int> class_counts;
  for (const auto& inst : train) {
    for (const auto& n : inst.graph.nodes) labels.insert(n.label);
    tokens.insert(inst.tokens.begin(), inst.tokens.end());
    ++class_counts[inst.label];
  }
  std::vector<std::string> classes;
  for (const auto& [label, count] : class_counts)
    if (count >= min_class_freq) classes.push_back(label);
  return {Vocab({labels.begin(), labels.end()}), Vocab(classes), Vocab({tokens.begin(), tokens.end()})};
}

}  // namespace apirec::nn
