// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "apirec/nn/model.hpp"

namespace apirec::nn {

struct Recommendation {
  std::string label;
  double probability = 0;
};

class NoHoleError : public std::invalid_argument {
 public:
  NoHoleError() : std::invalid_argument("graph has no hole") {}
};

/// Non-UNK class indices ordered by descending probability, ties by label.
template <typename T>
std::vector<int> rank_classes(const T* probs, const Vocab& classes);

/// 1-based rank of class `target` in `probs`, or 0 when target is UNK.
template <typename T>
int rank_of(const T* probs, const Vocab& classes, int target);

/// Top min(k, classes) recommendations for the hole of `g`.
template <typename T>
std::vector<Recommendation> predict(const Network<T>& net, const ApiContextGraph& g, const TokenBag& bag, int k);

/// Top-1 accuracy over `instances`, evaluated in chunks.
template <typename T>
double top1_accuracy(const Network<T>& net, const std::vector<TrainingInstance>& instances);

}  // namespace apirec::nn
