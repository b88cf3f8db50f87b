// SPDX-License-Identifier: Apache-2.0
#include "apirec/nn/predict.hpp"

#include <algorithm>
#include <numeric>

namespace apirec::nn {

template <typename T>
std::vector<int> rank_classes(const T* probs, const Vocab& classes) {
  std::vector<int> order(classes.size() - 1);
  std::iota(order.begin(), order.end(), 1);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (probs[a] != probs[b]) return probs[a] > probs[b];
    return classes.at(a) < classes.at(b);
  });
  return order;
}

template <typename T>
int rank_of(const T* probs, const Vocab& classes, int target) {
  if (target == kUnk) return 0;
  int rank = 1;
  for (int c = 1; c < classes.size(); ++c) {
    if (c == target) continue;
    if (probs[c] > probs[target] || (probs[c] == probs[target] && classes.at(c) < classes.at(target))) ++rank;
  }
  return rank;
}

template <typename T>
std::vector<Recommendation> predict(const Network<T>& net, const ApiContextGraph& g, const TokenBag& bag, int k) {
  if (!g.hole) throw NoHoleError();
  const Matrix<T> probs = net.probabilities(net.encode(g, bag));
  const auto order = rank_classes(probs.row(0), net.vocabs().classes);
  std::vector<Recommendation> out;
  for (int c : order) {
    if (static_cast<int>(out.size()) >= k) break;
    out.push_back({net.vocabs().classes.at(c), static_cast<double>(probs(0, c))});
  }
  return out;
}

template <typename T>
double top1_accuracy(const Network<T>& net, const std::vector<TrainingInstance>& instances) {
  if (instances.empty()) return 0;
  constexpr std::size_t kChunk = 512;
  std::size_t hits = 0;
  for (std::size_t begin = 0; begin < instances.size(); begin += kChunk) {
    std::vector<const TrainingInstance*> chunk;
    for (std::size_t i = begin; i < std::min(instances.size(), begin + kChunk); ++i) chunk.push_back(&instances[i]);
    const Batch b = net.encode(chunk);
    const Matrix<T> probs = net.probabilities(b);
    for (int g = 0; g < b.graphs; ++g) hits += rank_of(probs.row(g), net.vocabs().classes, b.target[g]) == 1;
  }
  return static_cast<double>(hits) / static_cast<double>(instances.size());
}

#define APIREC_INSTANTIATE(T)                                                                                    \
  template std::vector<int> rank_classes<T>(const T*, const Vocab&);                                             \
  template int rank_of<T>(const T*, const Vocab&, int);                                                          \
  template std::vector<Recommendation> predict<T>(const Network<T>&, const ApiContextGraph&, const TokenBag&, int); \
  template double top1_accuracy<T>(const Network<T>&, const std::vector<TrainingInstance>&);
APIREC_INSTANTIATE(float)
APIREC_INSTANTIATE(double)
#undef APIREC_INSTANTIATE

}  // namespace apirec::nn
