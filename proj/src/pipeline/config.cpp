// SPDX-License-Identifier: Apache-2.0
#include "apirec/pipeline/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "apirec/source/errors.hpp"

#ifndef APIREC_DEFAULT_DATA_DIR
#define APIREC_DEFAULT_DATA_DIR "data"
#endif

namespace apirec::pipeline {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename N>
N number(const std::string& key, const std::string& v) {
  N out{};
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) throw std::invalid_argument("bad value for " + key + ": '" + v + "'");
  return out;
}

bool boolean(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::invalid_argument("bad value for " + key + ": '" + v + "'");
}

}  // namespace

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("APIREC_DATA_DIR"); env && *env) return env;
  return APIREC_DEFAULT_DATA_DIR;
}

PipelineConfig default_config() {
  PipelineConfig cfg;
  cfg.catalog = default_data_dir() / "jdk_subset.catalog";
  cfg.vocabulary = default_data_dir() / "vocab.txt";
  return cfg;
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw FormatError("expected key=value", line_no);
    kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return kv;
}

std::map<std::string, std::string> read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_key_values(ss.str());
}

void apply_keys(PipelineConfig& cfg, const std::map<std::string, std::string>& kv) {
  std::map<std::string, std::string> model_keys;
  const auto model_defaults = nn::to_key_values(nn::ModelConfig{});
  for (const auto& [key, v] : kv) {
    if (model_defaults.count(key)) model_keys[key] = v;
    else if (key == "catalog") cfg.catalog = v;
    else if (key == "vocabulary") cfg.vocabulary = v;
    else if (key == "train_corpus") cfg.train_corpus = v;
    else if (key == "valid_corpus") cfg.valid_corpus = v;
    else if (key == "test_corpus") cfg.test_corpus = v;
    else if (key == "checkpoint") cfg.checkpoint = v;
    else if (key == "report") cfg.report = v;
    else if (key == "valid_fraction") cfg.valid_fraction = number<double>(key, v);
    else if (key == "split_seed") cfg.split_seed = number<std::uint64_t>(key, v);
    else if (key == "max_hole_both_contexts") cfg.corpus.max_hole_both_contexts = number<int>(key, v);
    else if (key == "include_preceding_only_unbounded") cfg.corpus.include_preceding_only_unbounded = boolean(key, v);
    else if (key == "min_api_in_context") cfg.corpus.min_api_in_context = number<int>(key, v);
    else if (key == "max_file_kb") cfg.corpus.max_file_kb = number<int>(key, v);
    else throw std::invalid_argument("unknown config key '" + key + "'");
    cfg.explicit_keys.insert(key);
  }
  nn::apply_key_values(cfg.model, model_keys);
  nn::validate(cfg.model);
  if (cfg.corpus.max_hole_both_contexts < 1 || cfg.corpus.min_api_in_context < 0 || cfg.corpus.max_file_kb < 1)
    throw std::invalid_argument("corpus limits must be positive");
  if (!(cfg.valid_fraction >= 0 && cfg.valid_fraction < 1)) throw std::invalid_argument("valid_fraction must be in [0, 1)");
}

}  // namespace apirec::pipeline
