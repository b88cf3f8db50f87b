// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "apirec/graph/graph.hpp"
#include "apirec/source/catalog.hpp"
#include "apirec/source/ir.hpp"
#include "apirec/tokens/tokens.hpp"

namespace apirec {

/// Hole-punched graph, the tokens of the code that remains, and the label
/// of the first removed node.
struct TrainingInstance {
  ApiContextGraph graph;
  TokenBag tokens;
  std::string label;

  bool operator==(const TrainingInstance&) const = default;
};

struct CorpusConfig {
  int max_hole_both_contexts = 5;
  bool include_preceding_only_unbounded = true;
  int min_api_in_context = 1;
  int max_file_kb = 200;
};

/// Per-variable token bags of one method, so the bag of any surviving
/// subset of the code can be assembled without re-tokenizing.
struct MethodTokens {
  TokenBag method;
  std::map<std::string, TokenBag> variables;

  TokenBag full() const;
  /// Method tokens plus the bags of the given variables that are known.
  TokenBag restricted(const std::vector<std::string>& vars) const;
};

MethodTokens method_tokens(const MethodIR& m, const ApiCatalog& catalog, const TokenVocabulary& vocab);

class InvalidStartError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SizeOutOfRangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Removes up to `hole_size` nodes along c/cd edges from `start`. A control
/// node takes its whole control scope with it and counts as one step. The
/// start position becomes the hole, linked by s edges from the start's
/// surviving control predecessors and to the node where removal stopped.
TrainingInstance make_instance(const ApiContextGraph& g, const MethodTokens& tokens, int start, int hole_size);

/// All admissible (start, hole_size) instances that pass the context filters,
/// ordered by start then size, exact duplicates removed.
std::vector<TrainingInstance> enumerate_instances(const ApiContextGraph& g, const MethodTokens& tokens,
                                                  const CorpusConfig& cfg);

/// One compact JSON object per line with keys nodes, edges, tokens, label.
std::string to_record(const TrainingInstance& inst);
TrainingInstance from_record(const std::string& line, long record);

void write_corpus(const std::vector<TrainingInstance>& instances, std::ostream& out);
void write_corpus(const std::vector<TrainingInstance>& instances, const std::filesystem::path& path);
std::vector<TrainingInstance> load_corpus(std::istream& in);
std::vector<TrainingInstance> load_corpus(const std::filesystem::path& path);

}  // namespace apirec
