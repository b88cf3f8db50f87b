// SPDX-License-Identifier: Apache-2.0
#include "apirec/eval/evaluate.hpp"

#include <algorithm>
#include <cstdio>
#include <json.hpp>

#include "apirec/nn/predict.hpp"
#include "apirec/nn/trainer.hpp"

namespace apirec::eval {

template <typename T>
std::vector<PredictionResult> rank_instances(const nn::Network<T>& net, const std::vector<TrainingInstance>& corpus) {
  constexpr std::size_t kChunk = 512;
  std::vector<PredictionResult> out;
  out.reserve(corpus.size());
  for (std::size_t begin = 0; begin < corpus.size(); begin += kChunk) {
    std::vector<const TrainingInstance*> chunk;
    for (std::size_t i = begin; i < std::min(corpus.size(), begin + kChunk); ++i) chunk.push_back(&corpus[i]);
    const nn::Batch b = net.encode(chunk);
    const nn::Matrix<T> probs = net.probabilities(b);
    for (int g = 0; g < b.graphs; ++g) {
      PredictionResult r;
      r.instance = begin + static_cast<std::size_t>(g);
      r.true_label = chunk[g]->label;
      if (int rank = nn::rank_of(probs.row(g), net.vocabs().classes, b.target[g]); rank > 0) r.rank = rank;
      out.push_back(std::move(r));
    }
  }
  return out;
}

EvalReport make_report(std::string model, const std::vector<PredictionResult>& results, const std::vector<int>& ks) {
  EvalReport rep;
  rep.model = std::move(model);
  rep.instances = results.size();
  rep.ks = ks;
  for (int k : ks) rep.accuracy.push_back(topk_accuracy(results, k));
  rep.mrr = mrr(results);
  return rep;
}

template <typename T>
EvalReport evaluate(const nn::Network<T>& net, const std::vector<TrainingInstance>& corpus, const std::vector<int>& ks) {
  if (corpus.empty()) throw EmptyResultsError();
  return make_report(net.config().structure_only ? "structure-only" : "full", rank_instances(net, corpus), ks);
}

FrequencyBaseline FrequencyBaseline::build(const std::vector<TrainingInstance>& train) {
  if (train.empty()) throw nn::EmptyCorpusError();
  std::map<std::string, int> counts;
  for (const auto& inst : train) ++counts[inst.label];
  FrequencyBaseline fb;
  for (const auto& [label, count] : counts) fb.ranking_.push_back(label);
  std::stable_sort(fb.ranking_.begin(), fb.ranking_.end(),
                   [&](const std::string& a, const std::string& b) { return counts[a] > counts[b]; });
  for (std::size_t i = 0; i < fb.ranking_.size(); ++i) fb.position_[fb.ranking_[i]] = static_cast<int>(i) + 1;
  return fb;
}

std::optional<int> FrequencyBaseline::rank_of(const std::string& label) const {
  if (auto it = position_.find(label); it != position_.end()) return it->second;
  return std::nullopt;
}

std::vector<PredictionResult> FrequencyBaseline::rank_instances(const std::vector<TrainingInstance>& corpus) const {
  std::vector<PredictionResult> out;
  for (std::size_t i = 0; i < corpus.size(); ++i) out.push_back({i, corpus[i].label, rank_of(corpus[i].label)});
  return out;
}

std::vector<double> reciprocal_ranks(const std::vector<PredictionResult>& results) {
  std::vector<double> out;
  out.reserve(results.size());
  for (const auto& r : results) out.push_back(r.rank ? 1.0 / *r.rank : 0.0);
  return out;
}

std::string format_text(const std::vector<EvalReport>& reports) {
  std::string out;
  char buf[128];
  if (!reports.empty()) {
    std::snprintf(buf, sizeof(buf), "%-16s %9s", "model", "instances");
    out += buf;
    for (int k : reports.front().ks) {
      std::snprintf(buf, sizeof(buf), " %8s", ("top-" + std::to_string(k)).c_str());
      out += buf;
    }
    out += "      MRR\n";
  }
  for (const auto& r : reports) {
    std::snprintf(buf, sizeof(buf), "%-16s %9zu", r.model.c_str(), r.instances);
    out += buf;
    for (double a : r.accuracy) {
      std::snprintf(buf, sizeof(buf), " %8.4f", a);
      out += buf;
    }
    std::snprintf(buf, sizeof(buf), " %8.4f\n", r.mrr);
    out += buf;
    for (const auto& c : r.comparisons) {
      std::snprintf(buf, sizeof(buf), "  vs %-12s U=%.1f p=%.6g%s\n", c.name.c_str(), c.test.u, c.test.p,
                    c.test.significant() ? " (significant)" : "");
      out += buf;
    }
  }
  return out;
}

std::string format_json(const std::vector<EvalReport>& reports) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["model"] = r.model;
    j["instances"] = r.instances;
    for (std::size_t i = 0; i < r.ks.size(); ++i) j["top" + std::to_string(r.ks[i])] = r.accuracy[i];
    j["mrr"] = r.mrr;
    if (!r.comparisons.empty()) {
      nlohmann::ordered_json cmp = nlohmann::ordered_json::array();
      for (const auto& c : r.comparisons)
        cmp.push_back({{"against", c.name}, {"u", c.test.u}, {"p", c.test.p}, {"exact", c.test.exact},
                       {"significant", c.test.significant()}});
      j["comparisons"] = std::move(cmp);
    }
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

template std::vector<PredictionResult> rank_instances<float>(const nn::Network<float>&,
                                                             const std::vector<TrainingInstance>&);
template std::vector<PredictionResult> rank_instances<double>(const nn::Network<double>&,
                                                              const std::vector<TrainingInstance>&);
template EvalReport evaluate<float>(const nn::Network<float>&, const std::vector<TrainingInstance>&,
                                    const std::vector<int>&);
template EvalReport evaluate<double>(const nn::Network<double>&, const std::vector<TrainingInstance>&,
                                     const std::vector<int>&);

}  // namespace apirec::eval
