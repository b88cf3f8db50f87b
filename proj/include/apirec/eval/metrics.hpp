// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace apirec::eval {

/// Rank of the true label in a full ranking; nullopt when it cannot be ranked.
struct PredictionResult {
  std::size_t instance = 0;
  std::string true_label;
  std::optional<int> rank;
};

class EmptyResultsError : public std::invalid_argument {
 public:
  EmptyResultsError() : std::invalid_argument("no prediction results") {}
};

class EmptySampleError : public std::invalid_argument {
 public:
  EmptySampleError() : std::invalid_argument("Mann-Whitney sample is empty") {}
};

double topk_accuracy(const std::vector<PredictionResult>& results, int k);
double mrr(const std::vector<PredictionResult>& results);

inline constexpr double kSignificanceLevel = 0.05;
inline constexpr std::size_t kExactLimit = 12;

struct MannWhitneyResult {
  double u = 0;  // statistic of the first sample
  double p = 1;  // two-sided
  bool exact = false;
  bool significant() const { return p < kSignificanceLevel; }
};

/// Exact enumeration over midrank assignments when |a| + |b| <= 12,
/// otherwise the tie-corrected normal approximation with continuity
/// correction.
MannWhitneyResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b);
MannWhitneyResult mann_whitney_exact(const std::vector<double>& a, const std::vector<double>& b);
MannWhitneyResult mann_whitney_normal(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace apirec::eval
