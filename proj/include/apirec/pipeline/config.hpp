// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>

#include "apirec/corpus/corpus.hpp"
#include "apirec/nn/config.hpp"

namespace apirec::pipeline {

struct PipelineConfig {
  std::filesystem::path catalog;
  std::filesystem::path vocabulary;
  CorpusConfig corpus;
  nn::ModelConfig model;
  std::filesystem::path train_corpus = "train.jsonl";
  std::filesystem::path valid_corpus = "valid.jsonl";
  std::filesystem::path test_corpus;
  std::filesystem::path checkpoint = "model.ckpt";
  std::filesystem::path report;
  double valid_fraction = 0.1;
  std::uint64_t split_seed = 1;

  /// Keys that were set from a file or an override, in the flat form.
  std::set<std::string> explicit_keys;
};

/// Directory holding the bundled catalog and vocabulary: $APIREC_DATA_DIR
/// when set, otherwise the build-time default.
std::filesystem::path default_data_dir();

PipelineConfig default_config();

/// `key = value` lines; blank lines and lines starting with '#' are skipped.
std::map<std::string, std::string> read_key_values(const std::filesystem::path& path);
std::map<std::string, std::string> parse_key_values(const std::string& text);

/// Applies keys to `cfg`, recording them in cfg.explicit_keys. Throws
/// std::invalid_argument on unknown keys or bad values.
void apply_keys(PipelineConfig& cfg, const std::map<std::string, std::string>& kv);

}  // namespace apirec::pipeline
