// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "apirec/nn/model.hpp"

namespace apirec::nn {

class EmptyCorpusError : public std::invalid_argument {
 public:
  EmptyCorpusError() : std::invalid_argument("corpus is empty") {}
};

struct EpochLog {
  int epoch = 0;
  double train_loss = 0;
  double valid_top1 = 0;

  bool operator==(const EpochLog&) const = default;
};

template <typename T>
struct TrainResult {
  Network<T> model;
  std::vector<EpochLog> log;
  int best_epoch = 0;
  double best_valid_top1 = -1;
};

using EpochCallback = std::function<void(const EpochLog&)>;

/// Minibatch Adam on mean cross-entropy. After every epoch the validation
/// top-1 accuracy is measured; training stops once it has not improved for
/// cfg.patience epochs (or after cfg.max_epochs) and the best parameters
/// seen are returned.
template <typename T>
TrainResult<T> train(const std::vector<TrainingInstance>& train_set, const std::vector<TrainingInstance>& valid_set,
                     const ModelConfig& cfg, const EpochCallback& on_epoch = {});

/// Same loop on an already constructed network (vocabularies fixed).
template <typename T>
TrainResult<T> train(Network<T> net, const std::vector<TrainingInstance>& train_set,
                     const std::vector<TrainingInstance>& valid_set, const EpochCallback& on_epoch = {});

}  // namespace apirec::nn
