// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "apirec/corpus/corpus.hpp"
#include "apirec/pipeline/config.hpp"
#include "apirec/source/catalog.hpp"
#include "apirec/tokens/tokens.hpp"

namespace apirec::pipeline {

class NoUsableMethodsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a single-file command finds no hole marker.
class MissingHoleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Logger = std::function<void(const std::string&)>;

/// One method of a source file, parsed and resolved.
struct LoadedMethod {
  MethodIR ir;
  ApiContextGraph graph;
  MethodTokens tokens;
};

struct MethodSelector {
  std::optional<std::string> name;
  /// 1-based line at which a hole marker is inserted before parsing.
  std::optional<int> hole_line;
};

/// Picks the method named by `sel.name`, else the one holding the hole
/// marker, else the first method of the file. Throws SyntaxError, IoError.
LoadedMethod load_method(const std::filesystem::path& file, const MethodSelector& sel, const ApiCatalog& catalog,
                         const TokenVocabulary& vocab);

/// Number of graph nodes that stand for a resolved call, creation or field
/// access.
std::size_t api_site_count(const ApiContextGraph& g);

struct IngestStats {
  std::size_t files = 0;
  std::size_t skipped_large = 0;
  std::size_t skipped_syntax = 0;
  std::size_t skipped_no_api = 0;
  std::size_t methods = 0;
  std::size_t projects = 0;
  std::size_t valid_projects = 0;
};

struct IngestResult {
  std::vector<TrainingInstance> train;
  std::vector<TrainingInstance> valid;
  IngestStats stats;
  /// True when no project was held out and valid mirrors train.
  bool valid_is_train = false;
};

/// Walks `root` in sorted path order and builds train/valid instances.
/// Top-level directories are projects; files directly under root form one
/// more project. Throws NoUsableMethodsError when nothing survives.
IngestResult ingest(const std::filesystem::path& root, const PipelineConfig& cfg, const ApiCatalog& catalog,
                    const TokenVocabulary& vocab, const Logger& log = {});

}  // namespace apirec::pipeline
