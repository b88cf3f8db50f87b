// SPDX-License-Identifier: Apache-2.0
#include "reference_enumerator.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

namespace apirec::testing {
namespace {

bool flows(EdgeType t) { return t == EdgeType::C || t == EdgeType::CD; }

struct Live {
  std::set<int> nodes;
  std::vector<Edge> edges;

  bool alive(int v) const { return nodes.count(v) != 0; }

  void remove(int v) {
    nodes.erase(v);
    edges.erase(std::remove_if(edges.begin(), edges.end(), [v](const Edge& e) { return e.src == v || e.dst == v; }),
                edges.end());
  }

  std::vector<int> flow_children(int v) const {
    std::set<int> out;
    for (const auto& e : edges)
      if (e.src == v && flows(e.type)) out.insert(e.dst);
    return {out.begin(), out.end()};
  }

  void remove_subgraph(int root) {
    std::set<int> seen{root};
    std::vector<int> stack{root};
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : flow_children(v))
        if (seen.insert(w).second) stack.push_back(w);
    }
    for (int v : seen) remove(v);
  }
};

// Calls, creations and field accesses; declarations do not count.
int api_nodes(const ApiContextGraph& g) {
  int n = 0;
  for (const auto& node : g.nodes) {
    const std::string& l = node.label;
    if (is_control_label(l) || l == kHoleLabel) continue;
    const auto dot = l.rfind('.');
    const std::string tail = dot == std::string::npos ? l : l.substr(dot + 1);
    if (tail == "Declaration" || tail == "Constant" || tail == "Null") continue;
    ++n;
  }
  return n;
}

}  // namespace

TrainingInstance reference_instance(const ApiContextGraph& g, const MethodTokens& tokens, int start, int hole_size,
                                    bool* has_successor) {
  Live live;
  for (const auto& n : g.nodes) live.nodes.insert(n.id);
  live.edges = g.edges;

  int count = 0;
  int curr = start;
  const int none = -1;
  while (count < hole_size && curr != none) {
    const int old = curr;
    if (is_scope_owner_label(g.nodes[old].label)) {
      int next = none;
      for (int child : live.flow_children(old)) {
        if (!live.alive(child)) continue;
        if (is_scope_unit_label(g.nodes[child].label)) live.remove_subgraph(child);
        else next = child;
      }
      curr = next;
    } else {
      const auto kids = live.flow_children(old);
      curr = kids.empty() ? none : kids.front();
    }
    count = count + 1;
    live.remove(old);
  }
  if (has_successor) *has_successor = curr != none;

  // Renumber survivors plus the hole in original id order.
  std::set<int> keep = live.nodes;
  keep.insert(start);
  std::map<int, int> id;
  for (int v : keep) id.emplace(v, static_cast<int>(id.size()));

  TrainingInstance inst;
  inst.label = g.nodes[start].label;
  inst.tokens = tokens.method;
  for (int v : keep) {
    GraphNode node;
    node.id = id[v];
    node.label = v == start ? std::string(kHoleLabel) : g.nodes[v].label;
    inst.graph.nodes.push_back(node);
    if (v == start || !g.nodes[v].origin) continue;
    for (const auto& var : g.nodes[v].origin->vars) {
      auto it = tokens.variables.find(var);
      if (it != tokens.variables.end()) inst.tokens.insert(it->second.begin(), it->second.end());
    }
  }
  inst.graph.hole = id[start];

  // pair -> (has c, has d)
  std::map<std::pair<int, int>, std::pair<bool, bool>> flow;
  std::vector<Edge> special;
  auto add_flow = [&](int s, int d, EdgeType t) {
    auto& f = flow[{s, d}];
    if (t == EdgeType::C || t == EdgeType::CD) f.first = true;
    if (t == EdgeType::D || t == EdgeType::CD) f.second = true;
  };
  for (const auto& e : live.edges) add_flow(id[e.src], id[e.dst], e.type);
  for (const auto& e : g.edges) {
    if (e.dst != start || !flows(e.type) || !live.alive(e.src)) continue;
    special.push_back({id[e.src], id[start], EdgeType::S});
    if (curr != none) add_flow(id[e.src], id[curr], EdgeType::C);
  }
  if (curr != none) special.push_back({id[start], id[curr], EdgeType::S});

  for (const auto& [pair, f] : flow) {
    const EdgeType t = f.first && f.second ? EdgeType::CD : f.first ? EdgeType::C : EdgeType::D;
    inst.graph.edges.push_back({pair.first, pair.second, t});
  }
  for (const auto& e : special)
    if (std::find(inst.graph.edges.begin(), inst.graph.edges.end(), e) == inst.graph.edges.end())
      inst.graph.edges.push_back(e);
  std::sort(inst.graph.edges.begin(), inst.graph.edges.end());
  return inst;
}

std::vector<TrainingInstance> reference_enumerate(const ApiContextGraph& g, const MethodTokens& tokens,
                                                  const CorpusConfig& cfg) {
  std::vector<TrainingInstance> out;
  std::set<std::string> seen;
  const int n = static_cast<int>(g.nodes.size());
  for (int start = 0; start < n; ++start) {
    if (is_scope_unit_label(g.nodes[start].label)) continue;
    for (int size = 1; size <= n - 1; ++size) {
      bool succ = false;
      TrainingInstance inst = reference_instance(g, tokens, start, size, &succ);
      const bool limited = succ || !cfg.include_preceding_only_unbounded;
      if (limited && size > cfg.max_hole_both_contexts) continue;
      const bool has_s = std::any_of(inst.graph.edges.begin(), inst.graph.edges.end(),
                                     [](const Edge& e) { return e.type == EdgeType::S; });
      if (!has_s || api_nodes(inst.graph) < cfg.min_api_in_context) continue;
      if (!seen.insert(to_record(inst)).second) continue;
      out.push_back(std::move(inst));
    }
  }
  return out;
}

}  // namespace apirec::testing
