// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>

#include "apirec/corpus/corpus.hpp"

namespace apirec::testing {

struct RandomMethod {
  ApiContextGraph graph;
  MethodTokens tokens;
};

/// Builder-shaped graph: sequential API nodes chained by c edges, scope
/// owners with unit children, occasional jumps that cut the chain, and
/// forward d edges between API nodes. Node count in [2, max_nodes].
RandomMethod random_method(std::mt19937_64& rng, int max_nodes = 12);

/// Arbitrary small graph without a hole: any labels, random forward c/d
/// edges. Used for properties that must hold on any input.
ApiContextGraph random_dag(std::mt19937_64& rng, int nodes, double edge_prob);

}  // namespace apirec::testing
