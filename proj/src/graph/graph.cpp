// SPDX-License-Identifier: Apache-2.0
#include "apirec/graph/graph.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <sstream>

#include "apirec/source/errors.hpp"

namespace apirec {
namespace {

constexpr std::array<std::string_view, 7> kOwners = {"If", "While", "DoWhile", "For", "Foreach", "Switch", "Try"};
constexpr std::array<std::string_view, 10> kScopeUnits = {"Condition", "Body",   "Then",    "ElseIf", "Else",
                                                          "Selector",  "Case",   "Default", "Catch",  "Finally"};

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& set, std::string_view s) {
  return std::find(set.begin(), set.end(), s) != set.end();
}

}  // namespace

const char* to_string(EdgeType t) {
  switch (t) {
    case EdgeType::C: return "c";
    case EdgeType::D: return "d";
    case EdgeType::CD: return "cd";
    case EdgeType::S: return "s";
  }
  return "?";
}

std::optional<EdgeType> parse_edge_type(std::string_view s) {
  if (s == "c") return EdgeType::C;
  if (s == "d") return EdgeType::D;
  if (s == "cd") return EdgeType::CD;
  if (s == "s") return EdgeType::S;
  return std::nullopt;
}

bool is_scope_owner_label(std::string_view label) { return contains(kOwners, label); }
bool is_scope_unit_label(std::string_view label) { return contains(kScopeUnits, label); }
bool is_control_label(std::string_view label) {
  return is_scope_owner_label(label) || is_scope_unit_label(label);
}
bool is_api_label(std::string_view label) { return !is_control_label(label) && label != kHoleLabel; }
bool is_declaration_label(std::string_view label) {
  return label.ends_with(".Declaration") || label.ends_with(".Constant") || label.ends_with(".Null");
}
bool is_api_use_label(std::string_view label) { return is_api_label(label) && !is_declaration_label(label); }

GraphStats graph_stats(const ApiContextGraph& g) {
  GraphStats st;
  st.nodes = g.nodes.size();
  for (const auto& e : g.edges) ++st.edges[static_cast<std::size_t>(e.type)];
  for (const auto& n : g.nodes) st.api_nodes += is_api_use_label(n.label);
  return st;
}

void normalize_edges(std::vector<Edge>& edges) {
  std::map<std::pair<int, int>, std::uint8_t> flow;  // bit 0: c, bit 1: d
  std::vector<Edge> special;
  for (const auto& e : edges) {
    switch (e.type) {
      case EdgeType::C: flow[{e.src, e.dst}] |= 1; break;
      case EdgeType::D: flow[{e.src, e.dst}] |= 2; break;
      case EdgeType::CD: flow[{e.src, e.dst}] |= 3; break;
      case EdgeType::S: special.push_back(e); break;
    }
  }
  std::vector<Edge> out;
  out.reserve(flow.size() + special.size());
  for (const auto& [pair, bits] : flow) {
    const EdgeType t = bits == 3 ? EdgeType::CD : bits == 1 ? EdgeType::C : EdgeType::D;
    out.push_back({pair.first, pair.second, t});
  }
  out.insert(out.end(), special.begin(), special.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  edges = std::move(out);
}

std::string validate(const ApiContextGraph& g) {
  const int n = static_cast<int>(g.nodes.size());
  for (int i = 0; i < n; ++i)
    if (g.nodes[i].id != i) return "node ids are not dense";
  if (!std::is_sorted(g.edges.begin(), g.edges.end())) return "edges are not sorted";
  for (std::size_t i = 0; i + 1 < g.edges.size(); ++i) {
    const auto& a = g.edges[i];
    const auto& b = g.edges[i + 1];
    if (a == b) return "duplicate edge";
    if (a.src == b.src && a.dst == b.dst) return "pair carries more than one edge type";
  }
  int hole_count = 0;
  for (const auto& node : g.nodes) hole_count += node.label == kHoleLabel;
  if (hole_count > 1) return "more than one hole";
  if (g.hole.has_value() != (hole_count == 1)) return "hole field disagrees with labels";
  if (g.hole && (*g.hole < 0 || *g.hole >= n || g.nodes[*g.hole].label != kHoleLabel)) return "bad hole id";
  int hole_edges = 0;
  for (const auto& e : g.edges) {
    if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n) return "edge endpoint out of range";
    const bool touches_hole = g.hole && (e.src == *g.hole || e.dst == *g.hole);
    if ((e.type == EdgeType::S) != touches_hole) return "s edges must touch exactly the hole";
    hole_edges += touches_hole;
  }
  if (g.hole && hole_edges == 0) return "hole is not connected";
  return "";
}

bool weakly_connected(const ApiContextGraph& g) {
  const std::size_t n = g.nodes.size();
  if (n == 0) return true;
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges) parent[find(e.src)] = find(e.dst);
  const std::size_t root = find(0);
  for (std::size_t i = 1; i < n; ++i)
    if (find(i) != root) return false;
  return true;
}

std::string dump_graph(const ApiContextGraph& g) {
  std::string out;
  for (const auto& n : g.nodes) out += "N " + std::to_string(n.id) + " " + n.label + "\n";
  for (const auto& e : g.edges)
    out += "E " + std::to_string(e.src) + " " + std::to_string(e.dst) + " " + to_string(e.type) + "\n";
  return out;
}

ApiContextGraph parse_graph_dump(std::string_view text) {
  ApiContextGraph g;
  std::istringstream in{std::string(text)};
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "N") {
      GraphNode node;
      ls >> node.id;
      ls.get();
      std::getline(ls, node.label);
      if (!ls.eof() && ls.fail()) throw FormatError("bad node line", line_no);
      if (node.id != static_cast<int>(g.nodes.size())) throw FormatError("node ids must be dense", line_no);
      if (node.label == kHoleLabel) g.hole = node.id;
      g.nodes.push_back(std::move(node));
    } else if (tag == "E") {
      Edge e;
      std::string type;
      if (!(ls >> e.src >> e.dst >> type)) throw FormatError("bad edge line", line_no);
      auto t = parse_edge_type(type);
      if (!t) throw FormatError("unknown edge type", line_no);
      e.type = *t;
      g.edges.push_back(e);
    } else {
      throw FormatError("unknown record '" + tag + "'", line_no);
    }
  }
  return g;
}

}  // namespace apirec
