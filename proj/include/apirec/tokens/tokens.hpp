// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "apirec/source/catalog.hpp"
#include "apirec/source/ir.hpp"

namespace apirec {

/// Word list used to keep only meaningful tokens.
class TokenVocabulary {
 public:
  TokenVocabulary() = default;
  explicit TokenVocabulary(const std::vector<std::string>& words);

  /// One lowercase word per line. Blank lines are skipped; an empty list is
  /// an error.
  static TokenVocabulary load(const std::filesystem::path& path);

  bool contains(std::string_view word) const { return words_.count(std::string(word)) != 0; }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

/// Sorted, duplicate-free set of normalized tokens.
using TokenBag = std::set<std::string>;

/// Method name followed by the names of parameters and local variables whose
/// declared type is a primitive or a catalog class, in source order without
/// repeats.
std::vector<std::string> extract_names(const MethodIR& m, const ApiCatalog& catalog);

/// Variables (parameters and locals) whose names enter the token bag.
std::set<std::string> eligible_variables(const MethodIR& m, const ApiCatalog& catalog);

/// Suffix-stripping lemmatizer for a single lowercase word.
std::string lemmatize(std::string_view word);

/// Deletes digits, splits on '_' and '$' and on camel-case boundaries,
/// lowercases and lemmatizes each piece.
std::vector<std::string> split_name(std::string_view raw);

/// Deduplicates and drops one-letter and out-of-vocabulary tokens.
TokenBag normalize_bag(const std::vector<std::string>& tokens, const TokenVocabulary& vocab);

/// split_name over every name, then normalize_bag.
TokenBag bag_from_names(const std::vector<std::string>& names, const TokenVocabulary& vocab);

}  // namespace apirec
