// SPDX-License-Identifier: Apache-2.0
//
// API context graph construction from a resolved method.
//
// Node kinds and labels:
//   declaration          T.Declaration / T.Constant / T.Null
//   object creation      T.new(P1,P2)
//   method call          T.m(P1,P2)
//   field access         T.f
//   cascading chain      one node: first element fully qualified, later
//                        elements as .m(P) / .f
//   nested call          one node per call, arguments first
//   control unit         If, While, ..., with Condition/Body/... children
//
// Edges: c for control flow, d for last-writer data flow, cd when both hold
// for a pair, s for the two hole connections.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "apirec/graph/graph.hpp"
#include "apirec/source/ir.hpp"

namespace apirec {

class EmptyMethodError : public std::runtime_error {
 public:
  EmptyMethodError() : std::runtime_error("method yields no graph nodes") {}
};

/// Label for a resolved call, creation or field-access site, following the
/// receiver chain for cascading calls. Returns nullopt when `site` is
/// unresolved (the caller creates no node).
std::optional<std::string> site_label(const Expr& site);

enum class DeclForm { Declaration, Constant, Null };

std::string declaration_label(std::string_view fq_type, DeclForm form);

/// Builds the API context graph of a resolved method. At most one hole.
/// Throws EmptyMethodError when no non-hole node is produced.
ApiContextGraph build_graph(const MethodIR& m);

}  // namespace apirec
