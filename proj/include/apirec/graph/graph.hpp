// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace apirec {

/// c: control flow, d: data flow, cd: both, s: hole connection.
enum class EdgeType : std::uint8_t { C = 0, D = 1, CD = 2, S = 3 };

inline constexpr std::size_t kEdgeTypeCount = 4;

const char* to_string(EdgeType t);
std::optional<EdgeType> parse_edge_type(std::string_view s);

inline constexpr std::string_view kHoleLabel = "Hole";

/// Where a node came from in the method source.
struct NodeOrigin {
  int statement = -1;  // pre-order statement index
  int line = 0;
  std::vector<std::string> vars;  // variables referenced by the producing statement/expression

  bool operator==(const NodeOrigin&) const = default;
};

struct GraphNode {
  int id = 0;
  std::string label;
  std::optional<NodeOrigin> origin;

  bool operator==(const GraphNode&) const = default;
};

struct Edge {
  int src = 0;
  int dst = 0;
  EdgeType type = EdgeType::C;

  auto operator<=>(const Edge&) const = default;
};

/// Directed labeled API context graph. Nodes are numbered 0..n-1 and edges
/// are kept sorted by (src, dst, type).
struct ApiContextGraph {
  std::vector<GraphNode> nodes;
  std::vector<Edge> edges;
  std::optional<int> hole;

  std::size_t size() const { return nodes.size(); }
  bool empty() const { return nodes.empty(); }

  bool operator==(const ApiContextGraph&) const = default;
};

/// Control-unit labels and the scope-unit subset that only occurs as a child
/// of a control node (Condition, Body, Then, ...).
bool is_control_label(std::string_view label);
bool is_scope_unit_label(std::string_view label);
/// Nodes that own a control scope: If, While, DoWhile, For, Foreach, Switch, Try.
bool is_scope_owner_label(std::string_view label);
/// API nodes: anything that is neither a control unit nor the hole.
bool is_api_label(std::string_view label);
/// T.Declaration, T.Constant and T.Null.
bool is_declaration_label(std::string_view label);
/// API nodes other than declarations: calls, creations, field accesses.
bool is_api_use_label(std::string_view label);

struct GraphStats {
  std::size_t nodes = 0;
  std::array<std::size_t, kEdgeTypeCount> edges{};  // indexed by EdgeType
  std::size_t api_nodes = 0;  // calls, creations and field accesses

  std::size_t total_edges() const { return edges[0] + edges[1] + edges[2] + edges[3]; }
};

GraphStats graph_stats(const ApiContextGraph& g);

/// Sorts and deduplicates edges, merging c and d on the same pair into cd.
void normalize_edges(std::vector<Edge>& edges);

/// Checks the structural invariants (dense ids, sorted unique edges, no pair
/// carrying both c and d, hole wiring). Returns an empty string when valid.
std::string validate(const ApiContextGraph& g);

bool weakly_connected(const ApiContextGraph& g);

/// Line dump: `N <id> <label>` lines, then `E <src> <dst> <type>` lines.
std::string dump_graph(const ApiContextGraph& g);
ApiContextGraph parse_graph_dump(std::string_view text);

}  // namespace apirec
