// SPDX-License-Identifier: Apache-2.0
#include "apirec/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace apirec::eval {
namespace {

void require(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw EmptySampleError();
}

double u_statistic(const std::vector<double>& a, const std::vector<double>& b) {
  double u = 0;
  for (double x : a)
    for (double y : b) u += x > y ? 1.0 : x == y ? 0.5 : 0.0;
  return u;
}

/// Midranks of the pooled sample (a first, then b).
std::vector<double> midranks(const std::vector<double>& pooled) {
  const std::size_t n = pooled.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return pooled[i] < pooled[j]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double topk_accuracy(const std::vector<PredictionResult>& results, int k) {
  if (results.empty()) throw EmptyResultsError();
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  std::size_t hits = 0;
  for (const auto& r : results) hits += r.rank && *r.rank <= k;
  return static_cast<double>(hits) / static_cast<double>(results.size());
}

double mrr(const std::vector<PredictionResult>& results) {
  if (results.empty()) throw EmptyResultsError();
  double sum = 0;
  for (const auto& r : results)
    if (r.rank) sum += 1.0 / *r.rank;
  return sum / static_cast<double>(results.size());
}

MannWhitneyResult mann_whitney_exact(const std::vector<double>& a, const std::vector<double>& b) {
  require(a, b);
  const std::size_t na = a.size(), n = a.size() + b.size();
  if (n > 30) throw std::invalid_argument("exact Mann-Whitney limited to 30 observations");
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  const auto ranks = midranks(pooled);

  MannWhitneyResult res;
  res.exact = true;
  res.u = u_statistic(a, b);
  const double mu = static_cast<double>(na) * static_cast<double>(b.size()) / 2.0;
  const double observed = std::abs(res.u - mu);
  const double offset = static_cast<double>(na) * static_cast<double>(na + 1) / 2.0;

  std::size_t extreme = 0, total = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != na) continue;
    double rank_sum = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) rank_sum += ranks[i];
    ++total;
    if (std::abs(rank_sum - offset - mu) >= observed - 1e-9) ++extreme;
  }
  res.p = static_cast<double>(extreme) / static_cast<double>(total);
  return res;
}

MannWhitneyResult mann_whitney_normal(const std::vector<double>& a, const std::vector<double>& b) {
  require(a, b);
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double n = na + nb;
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::sort(pooled.begin(), pooled.end());
  double ties = 0;
  for (std::size_t i = 0; i < pooled.size();) {
    std::size_t j = i;
    while (j < pooled.size() && pooled[j] == pooled[i]) ++j;
    const double t = static_cast<double>(j - i);
    ties += t * t * t - t;
    i = j;
  }
  MannWhitneyResult res;
  res.u = u_statistic(a, b);
  const double mu = na * nb / 2.0;
  const double var = na * nb / 12.0 * ((n + 1.0) - ties / (n * (n - 1.0)));
  if (!(var > 0)) {
    res.p = 1.0;
    return res;
  }
  const double z = std::max(0.0, std::abs(res.u - mu) - 0.5) / std::sqrt(var);
  res.p = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
  return res;
}

MannWhitneyResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b) {
  require(a, b);
  if (a.size() + b.size() <= kExactLimit) return mann_whitney_exact(a, b);
  return mann_whitney_normal(a, b);
}

}  // namespace apirec::eval
