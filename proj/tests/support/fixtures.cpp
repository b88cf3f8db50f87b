// SPDX-License-Identifier: Apache-2.0
#include "fixtures.hpp"

#include <unistd.h>

#include "apirec/graph/builder.hpp"
#include "apirec/source/parser.hpp"
#include "apirec/source/resolver.hpp"

namespace apirec::testing {

std::filesystem::path data_dir() { return APIREC_TEST_DATA_DIR; }

std::filesystem::path sample_path(const std::string& file) { return data_dir() / "samples" / file; }

const ApiCatalog& jdk_catalog() {
  static const ApiCatalog catalog = ApiCatalog::load(data_dir() / "jdk_subset.catalog");
  return catalog;
}

const TokenVocabulary& english_vocab() {
  static const TokenVocabulary vocab = TokenVocabulary::load(data_dir() / "vocab.txt");
  return vocab;
}

pipeline::LoadedMethod load_text(const std::string& source) {
  pipeline::LoadedMethod m;
  m.ir = resolve_apis(parse_method(source), jdk_catalog());
  m.graph = build_graph(m.ir);
  m.tokens = method_tokens(m.ir, jdk_catalog(), english_vocab());
  return m;
}

pipeline::LoadedMethod load_sample(const std::string& file, const pipeline::MethodSelector& sel) {
  return pipeline::load_method(sample_path(file), sel, jdk_catalog(), english_vocab());
}

std::filesystem::path scratch_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() / ("apirec-" + tag + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace apirec::testing
