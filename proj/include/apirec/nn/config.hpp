// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace apirec::nn {

enum class Precision { F32, F64 };

struct ModelConfig {
  int embedding_size = 300;
  int hidden_layers = 3;
  int hidden_size = 300;
  double keep_prob = 0.75;
  double learning_rate = 0.005;
  int batch_size = 256;
  int propagation_steps = 5;
  int patience = 5;
  int min_class_freq = 2;
  int max_epochs = 200;
  std::uint64_t seed = 1;
  Precision precision = Precision::F32;
  bool structure_only = false;

  bool operator==(const ModelConfig&) const = default;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const ModelConfig& cfg);

/// Flat key=value form, keys named after the fields above.
std::map<std::string, std::string> to_key_values(const ModelConfig& cfg);
/// Applies the known keys in `kv` to `cfg`; unknown keys are ignored.
/// Throws std::invalid_argument on unparsable values.
void apply_key_values(ModelConfig& cfg, const std::map<std::string, std::string>& kv);

const char* to_string(Precision p);

}  // namespace apirec::nn
