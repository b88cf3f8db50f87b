// SPDX-License-Identifier: Apache-2.0
// Central finite differences against the analytic gradient of Network<double>.
#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "apirec/nn/model.hpp"

namespace apirec::testing {

struct GradCheck {
  double max_rel_err = 0;
  std::string worst;  // "tensor[index]"
  long entries = 0;
};

/// rel = |analytic - numeric| / max(|analytic|, |numeric|, floor), maximized
/// over every entry of every tensor.
GradCheck check_gradients(const nn::Network<double>& net, const nn::Batch& batch, bool train, std::uint64_t mask_seed,
                          double step = 1e-5, double floor = 1e-6);

/// Small hole instances: graphs of at most `max_nodes` nodes, bags of at most
/// `max_tokens` tokens, labels drawn from at most `max_classes` distinct values.
std::vector<TrainingInstance> small_instances(std::mt19937_64& rng, int count, int max_nodes, int max_tokens,
                                              int max_classes);

}  // namespace apirec::testing
