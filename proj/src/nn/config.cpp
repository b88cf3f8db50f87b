// SPDX-License-Identifier: Apache-2.0
#include "apirec/nn/config.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace apirec::nn {
namespace {

template <typename N>
N parse_number(const std::string& key, const std::string& text) {
  N value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw std::invalid_argument("bad value for " + key + ": '" + text + "'");
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw std::invalid_argument("bad value for " + key + ": '" + text + "'");
}

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

const char* to_string(Precision p) { return p == Precision::F32 ? "32" : "64"; }

void validate(const ModelConfig& cfg) {
  auto positive = [](const char* name, double v) {
    if (!(v > 0)) throw std::invalid_argument(std::string(name) + " must be positive");
  };
  positive("embedding_size", cfg.embedding_size);
  positive("hidden_size", cfg.hidden_size);
  positive("learning_rate", cfg.learning_rate);
  positive("batch_size", cfg.batch_size);
  positive("patience", cfg.patience);
  positive("min_class_freq", cfg.min_class_freq);
  positive("max_epochs", cfg.max_epochs);
  if (cfg.hidden_layers < 0) throw std::invalid_argument("hidden_layers must not be negative");
  if (cfg.propagation_steps < 0) throw std::invalid_argument("propagation_steps must not be negative");
  if (!(cfg.keep_prob > 0 && cfg.keep_prob <= 1)) throw std::invalid_argument("keep_prob must be in (0, 1]");
}

std::map<std::string, std::string> to_key_values(const ModelConfig& cfg) {
  return {
      {"embedding_size", std::to_string(cfg.embedding_size)},
      {"hidden_layers", std::to_string(cfg.hidden_layers)},
      {"hidden_size", std::to_string(cfg.hidden_size)},
      {"keep_prob", format_double(cfg.keep_prob)},
      {"learning_rate", format_double(cfg.learning_rate)},
      {"batch_size", std::to_string(cfg.batch_size)},
      {"propagation_steps", std::to_string(cfg.propagation_steps)},
      {"patience", std::to_string(cfg.patience)},
      {"min_class_freq", std::to_string(cfg.min_class_freq)},
      {"max_epochs", std::to_string(cfg.max_epochs)},
      {"seed", std::to_string(cfg.seed)},
      {"precision", to_string(cfg.precision)},
      {"structure_only", cfg.structure_only ? "true" : "false"},
  };
}

void apply_key_values(ModelConfig& cfg, const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    if (key == "embedding_size") cfg.embedding_size = parse_number<int>(key, value);
    else if (key == "hidden_layers") cfg.hidden_layers = parse_number<int>(key, value);
    else if (key == "hidden_size") cfg.hidden_size = parse_number<int>(key, value);
    else if (key == "keep_prob") cfg.keep_prob = parse_number<double>(key, value);
    else if (key == "learning_rate") cfg.learning_rate = parse_number<double>(key, value);
    else if (key == "batch_size") cfg.batch_size = parse_number<int>(key, value);
    else if (key == "propagation_steps") cfg.propagation_steps = parse_number<int>(key, value);
    else if (key == "patience") cfg.patience = parse_number<int>(key, value);
    else if (key == "min_class_freq") cfg.min_class_freq = parse_number<int>(key, value);
    else if (key == "max_epochs") cfg.max_epochs = parse_number<int>(key, value);
    else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
    else if (key == "structure_only") cfg.structure_only = parse_bool(key, value);
    else if (key == "precision") {
      if (value == "32" || value == "f32" || value == "float") cfg.precision = Precision::F32;
      else if (value == "64" || value == "f64" || value == "double") cfg.precision = Precision::F64;
      else throw std::invalid_argument("bad value for precision: '" + value + "'");
    }
  }
}

}  // namespace apirec::nn
