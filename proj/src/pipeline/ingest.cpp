// SPDX-License-Identifier: Apache-2.0
#include "apirec/pipeline/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "apirec/graph/builder.hpp"
#include "apirec/source/errors.hpp"
#include "apirec/source/parser.hpp"
#include "apirec/source/resolver.hpp"

namespace fs = std::filesystem;

namespace apirec::pipeline {
namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LoadedMethod finish(MethodIR ir, const ApiCatalog& catalog, const TokenVocabulary& vocab) {
  LoadedMethod out;
  out.ir = resolve_apis(std::move(ir), catalog);
  out.graph = build_graph(out.ir);
  out.tokens = method_tokens(out.ir, catalog, vocab);
  return out;
}

}  // namespace

std::size_t api_site_count(const ApiContextGraph& g) { return graph_stats(g).api_nodes; }

LoadedMethod load_method(const fs::path& file, const MethodSelector& sel, const ApiCatalog& catalog,
                         const TokenVocabulary& vocab) {
  std::string text = read_file(file);
  if (sel.hole_line) text = insert_hole_marker(text, *sel.hole_line);
  const auto spans = find_methods(text);
  if (spans.empty()) throw SyntaxError("no method declaration found", 1);

  const MethodSpan* chosen = nullptr;
  if (sel.name) {
    for (const auto& s : spans)
      if (s.name == *sel.name) { chosen = &s; break; }
    if (!chosen) throw std::invalid_argument("no method named '" + *sel.name + "' in " + file.string());
  } else {
    for (const auto& s : spans) {
      const std::string_view body(text.data() + s.begin, s.end - s.begin);
      if (body.find(kHoleMarker) != std::string_view::npos) { chosen = &s; break; }
    }
    if (!chosen) chosen = &spans.front();
  }
  return finish(parse_method(std::string_view(text).substr(chosen->begin, chosen->end - chosen->begin), chosen->first_line),
                catalog, vocab);
}

IngestResult ingest(const fs::path& root, const PipelineConfig& cfg, const ApiCatalog& catalog,
                    const TokenVocabulary& vocab, const Logger& log) {
  auto say = [&](const std::string& m) { if (log) log(m); };
  if (!fs::is_directory(root)) throw IoError("not a directory: " + root.string());

  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file() && entry.path().extension() == ".java") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  // project key -> instances in file order
  std::map<std::string, std::vector<TrainingInstance>> projects;
  IngestResult result;
  auto& st = result.stats;
  const auto limit = static_cast<std::uintmax_t>(cfg.corpus.max_file_kb) * 1024;

  for (const auto& path : files) {
    ++st.files;
    const fs::path rel = path.lexically_relative(root);
    const std::string project = std::distance(rel.begin(), rel.end()) > 1 ? rel.begin()->string() : std::string();
    if (fs::file_size(path) > limit) {
      ++st.skipped_large;
      say("warning: skipping " + rel.string() + " (larger than " + std::to_string(cfg.corpus.max_file_kb) + " KB)");
      continue;
    }
    const std::string text = read_file(path);
    auto& bucket = projects[project];
    for (const auto& span : find_methods(text)) {
      LoadedMethod m;
      try {
        m = finish(parse_method(std::string_view(text).substr(span.begin, span.end - span.begin), span.first_line),
                   catalog, vocab);
      } catch (const SyntaxError& e) {
        ++st.skipped_syntax;
        say("skip " + rel.string() + ":" + span.name + ": " + e.what());
        continue;
      } catch (const EmptyMethodError&) {
        ++st.skipped_no_api;
        continue;
      }
      if (m.graph.hole) {
        ++st.skipped_syntax;
        say("skip " + rel.string() + ":" + span.name + ": contains a hole marker");
        continue;
      }
      if (api_site_count(m.graph) == 0) {
        ++st.skipped_no_api;
        continue;
      }
      ++st.methods;
      auto inst = enumerate_instances(m.graph, m.tokens, cfg.corpus);
      bucket.insert(bucket.end(), std::make_move_iterator(inst.begin()), std::make_move_iterator(inst.end()));
    }
  }
  if (st.methods == 0) throw NoUsableMethodsError("no usable methods under " + root.string());

  std::vector<std::string> keys;
  for (const auto& [k, v] : projects) keys.push_back(k);
  st.projects = keys.size();
  std::vector<std::string> order = keys;
  std::mt19937_64 rng(cfg.split_seed);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(order[i - 1], order[pick(rng)]);
  }
  st.valid_projects = static_cast<std::size_t>(static_cast<double>(order.size()) * cfg.valid_fraction);
  const std::set<std::string> held(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(st.valid_projects));

  for (const auto& k : keys) {
    auto& dst = held.count(k) ? result.valid : result.train;
    dst.insert(dst.end(), projects[k].begin(), projects[k].end());
  }
  if (result.valid.empty()) {
    result.valid = result.train;
    result.valid_is_train = true;
  }
  if (result.train.empty()) throw NoUsableMethodsError("no training instances under " + root.string());
  return result;
}

}  // namespace apirec::pipeline
