// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include "apirec/corpus/corpus.hpp"
#include "apirec/eval/metrics.hpp"
#include "apirec/nn/model.hpp"

namespace apirec::eval {

struct Comparison {
  std::string name;
  MannWhitneyResult test;
};

struct EvalReport {
  std::string model;
  std::size_t instances = 0;
  std::vector<int> ks;
  std::vector<double> accuracy;  // aligned with ks
  double mrr = 0;
  std::vector<Comparison> comparisons;
};

inline const std::vector<int> kDefaultKs = {1, 5, 10};

/// Rank of every instance's label under the network's full ranking.
template <typename T>
std::vector<PredictionResult> rank_instances(const nn::Network<T>& net, const std::vector<TrainingInstance>& corpus);

EvalReport make_report(std::string model, const std::vector<PredictionResult>& results, const std::vector<int>& ks);

template <typename T>
EvalReport evaluate(const nn::Network<T>& net, const std::vector<TrainingInstance>& corpus,
                    const std::vector<int>& ks = kDefaultKs);

/// Ranks classes by training-label frequency, ties lexicographic; the same
/// ranking for every input.
class FrequencyBaseline {
 public:
  static FrequencyBaseline build(const std::vector<TrainingInstance>& train);

  const std::vector<std::string>& ranking() const { return ranking_; }
  std::optional<int> rank_of(const std::string& label) const;
  std::vector<PredictionResult> rank_instances(const std::vector<TrainingInstance>& corpus) const;

 private:
  std::vector<std::string> ranking_;
  std::map<std::string, int> position_;
};

/// Reciprocal ranks (0 when unranked), the per-instance sample used for
/// significance tests.
std::vector<double> reciprocal_ranks(const std::vector<PredictionResult>& results);

/// Columns in the order k accuracies then MRR.
std::string format_text(const std::vector<EvalReport>& reports);
std::string format_json(const std::vector<EvalReport>& reports);

}  // namespace apirec::eval
