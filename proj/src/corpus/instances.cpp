// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <deque>
#include <unordered_set>

#include "apirec/corpus/corpus.hpp"

namespace apirec {
namespace {

struct Punched {
  TrainingInstance instance;
  bool has_successor = false;
  bool exhausted = false;  // removal ran out of nodes before hole_size steps
};

Punched punch(const ApiContextGraph& g, const MethodTokens& tokens, int start, int hole_size) {
  const int n = static_cast<int>(g.nodes.size());
  std::vector<std::vector<int>> flow_out(n), flow_in(n);
  for (const auto& e : g.edges) {
    if (e.type == EdgeType::C || e.type == EdgeType::CD) {
      flow_out[e.src].push_back(e.dst);
      flow_in[e.dst].push_back(e.src);
    }
  }

  std::vector<char> removed(n, 0);
  auto remove_scope = [&](int root) {
    std::deque<int> queue{root};
    removed[root] = 1;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int w : flow_out[v]) {
        if (!removed[w]) {
          removed[w] = 1;
          queue.push_back(w);
        }
      }
    }
  };

  int count = 0;
  int curr = start;
  while (count < hole_size && curr >= 0) {
    const int old = curr;
    int next = -1;
    if (is_scope_owner_label(g.nodes[old].label)) {
      for (int child : flow_out[old]) {
        if (removed[child]) continue;
        if (is_scope_unit_label(g.nodes[child].label)) remove_scope(child);
        else next = child;
      }
    } else {
      for (int child : flow_out[old]) {
        if (!removed[child]) {
          next = child;
          break;
        }
      }
    }
    ++count;
    removed[old] = 1;
    curr = next;
  }

  Punched out;
  out.exhausted = curr < 0;
  removed[start] = 0;  // the hole takes its place

  std::vector<int> remap(n, -1);
  ApiContextGraph& h = out.instance.graph;
  std::vector<std::string> vars;
  for (int v = 0; v < n; ++v) {
    if (removed[v]) continue;
    remap[v] = static_cast<int>(h.nodes.size());
    GraphNode node;
    node.id = remap[v];
    node.label = v == start ? std::string(kHoleLabel) : g.nodes[v].label;
    if (v != start && g.nodes[v].origin) vars.insert(vars.end(), g.nodes[v].origin->vars.begin(), g.nodes[v].origin->vars.end());
    h.nodes.push_back(std::move(node));
  }
  const int hole = remap[start];
  h.hole = hole;
  for (const auto& e : g.edges) {
    if (e.src == start || e.dst == start || removed[e.src] || removed[e.dst]) continue;
    h.edges.push_back({remap[e.src], remap[e.dst], e.type});
  }
  out.has_successor = curr >= 0;
  for (int p : flow_in[start]) {
    if (removed[p] || p == start) continue;
    h.edges.push_back({remap[p], hole, EdgeType::S});
    if (curr >= 0) h.edges.push_back({remap[p], remap[curr], EdgeType::C});
  }
  if (curr >= 0) h.edges.push_back({hole, remap[curr], EdgeType::S});
  normalize_edges(h.edges);

  out.instance.tokens = tokens.restricted(vars);
  out.instance.label = g.nodes[start].label;
  return out;
}

void check_arguments(const ApiContextGraph& g, int start, int hole_size) {
  const int n = static_cast<int>(g.nodes.size());
  if (g.hole) throw InvalidStartError("graph already contains a hole");
  if (start < 0 || start >= n) throw InvalidStartError("start node out of range");
  if (g.nodes[start].label == kHoleLabel) throw InvalidStartError("start node is the hole");
  if (hole_size < 1 || hole_size > n - 1) throw SizeOutOfRangeError("hole size must be in [1, nodes - 1]");
}

}  // namespace

TokenBag MethodTokens::full() const {
  TokenBag bag = method;
  for (const auto& [name, b] : variables) bag.insert(b.begin(), b.end());
  return bag;
}

TokenBag MethodTokens::restricted(const std::vector<std::string>& vars) const {
  TokenBag bag = method;
  for (const auto& v : vars) {
    if (auto it = variables.find(v); it != variables.end()) bag.insert(it->second.begin(), it->second.end());
  }
  return bag;
}

MethodTokens method_tokens(const MethodIR& m, const ApiCatalog& catalog, const TokenVocabulary& vocab) {
  MethodTokens t;
  t.method = bag_from_names({m.name}, vocab);
  for (const auto& v : eligible_variables(m, catalog)) t.variables[v] = bag_from_names({v}, vocab);
  return t;
}

TrainingInstance make_instance(const ApiContextGraph& g, const MethodTokens& tokens, int start, int hole_size) {
  check_arguments(g, start, hole_size);
  return punch(g, tokens, start, hole_size).instance;
}

std::vector<TrainingInstance> enumerate_instances(const ApiContextGraph& g, const MethodTokens& tokens,
                                                  const CorpusConfig& cfg) {
  std::vector<TrainingInstance> out;
  if (g.hole) return out;
  const int n = static_cast<int>(g.nodes.size());
  std::unordered_set<std::string> seen;
  for (int start = 0; start < n; ++start) {
    if (is_scope_unit_label(g.nodes[start].label)) continue;
    for (int size = 1; size <= n - 1; ++size) {
      Punched p = punch(g, tokens, start, size);
      const bool bounded = p.has_successor || !cfg.include_preceding_only_unbounded;
      const bool admissible = !bounded || size <= cfg.max_hole_both_contexts;
      if (admissible) {
        const ApiContextGraph& h = p.instance.graph;
        const bool connected = std::any_of(h.edges.begin(), h.edges.end(),
                                           [](const Edge& e) { return e.type == EdgeType::S; });
        const auto api = static_cast<int>(graph_stats(h).api_nodes);
        if (connected && api >= cfg.min_api_in_context && seen.insert(to_record(p.instance)).second)
          out.push_back(std::move(p.instance));
      }
      if (p.exhausted) break;
    }
  }
  return out;
}

}  // namespace apirec
