// SPDX-License-Identifier: Apache-2.0
#include "apirec/nn/trainer.hpp"

#include <numeric>
#include <random>

#include "apirec/nn/optimizer.hpp"
#include "apirec/nn/predict.hpp"

namespace apirec::nn {
namespace {

void shuffle(std::vector<std::size_t>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace

template <typename T>
TrainResult<T> train(Network<T> net, const std::vector<TrainingInstance>& train_set,
                     const std::vector<TrainingInstance>& valid_set, const EpochCallback& on_epoch) {
  if (train_set.empty() || valid_set.empty()) throw EmptyCorpusError();
  const ModelConfig cfg = net.config();
  Adam<T> opt(net.params(), cfg.learning_rate);
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);

  TrainResult<T> result{net, {}, 0, -1.0};
  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), 0);
  int stale = 0;
  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    shuffle(order, rng);
    double loss_sum = 0;
    for (std::size_t begin = 0; begin < order.size(); begin += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), begin + static_cast<std::size_t>(cfg.batch_size));
      std::vector<const TrainingInstance*> chunk;
      for (std::size_t i = begin; i < end; ++i) chunk.push_back(&train_set[order[i]]);
      const Batch batch = net.encode(chunk);
      auto grads = net.zeros_like();
      const T loss = net.loss(batch, true, rng(), &grads);
      opt.step(net.params(), grads);
      loss_sum += static_cast<double>(loss) * static_cast<double>(end - begin);
    }
    EpochLog entry{epoch, loss_sum / static_cast<double>(train_set.size()), top1_accuracy(net, valid_set)};
    result.log.push_back(entry);
    if (on_epoch) on_epoch(entry);
    if (entry.valid_top1 > result.best_valid_top1) {
      result.best_valid_top1 = entry.valid_top1;
      result.best_epoch = epoch;
      result.model.params() = net.params();
      stale = 0;
    } else if (++stale >= cfg.patience) {
      break;
    }
  }
  return result;
}

template <typename T>
TrainResult<T> train(const std::vector<TrainingInstance>& train_set, const std::vector<TrainingInstance>& valid_set,
                     const ModelConfig& cfg, const EpochCallback& on_epoch) {
  if (train_set.empty() || valid_set.empty()) throw EmptyCorpusError();
  return train(Network<T>(cfg, ModelVocabs::build(train_set, cfg.min_class_freq)), train_set, valid_set, on_epoch);
}

template TrainResult<float> train<float>(const std::vector<TrainingInstance>&, const std::vector<TrainingInstance>&,
                                         const ModelConfig&, const EpochCallback&);
template TrainResult<double> train<double>(const std::vector<TrainingInstance>&, const std::vector<TrainingInstance>&,
                                           const ModelConfig&, const EpochCallback&);
template TrainResult<float> train<float>(Network<float>, const std::vector<TrainingInstance>&,
                                         const std::vector<TrainingInstance>&, const EpochCallback&);
template TrainResult<double> train<double>(Network<double>, const std::vector<TrainingInstance>&,
                                           const std::vector<TrainingInstance>&, const EpochCallback&);

}  // namespace apirec::nn
