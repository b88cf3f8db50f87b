// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <json.hpp>
#include <random>

#include "apirec/eval/evaluate.hpp"
#include "apirec/nn/trainer.hpp"
#include "gradcheck.hpp"

using namespace apirec;

namespace {

TrainingInstance labelled(const std::string& label, const std::string& context = "java.io.File.exists()") {
  TrainingInstance inst;
  inst.graph.nodes = {{0, context, std::nullopt}, {1, "Hole", std::nullopt}};
  inst.graph.edges = {{0, 1, EdgeType::S}};
  inst.graph.hole = 1;
  inst.label = label;
  return inst;
}

nn::ModelConfig small_config() {
  nn::ModelConfig cfg;
  cfg.embedding_size = 6;
  cfg.hidden_size = 6;
  cfg.propagation_steps = 2;
  cfg.min_class_freq = 1;
  cfg.precision = nn::Precision::F64;
  return cfg;
}

}  // namespace

TEST_SUITE("frequency baseline") {
  TEST_CASE("counts decide the order") {
    const auto b = eval::FrequencyBaseline::build({labelled("A"), labelled("B"), labelled("A"), labelled("A")});
    CHECK(b.ranking() == std::vector<std::string>{"A", "B"});
    CHECK(b.rank_of("A") == 1);
    CHECK(b.rank_of("B") == 2);
    CHECK_FALSE(b.rank_of("C").has_value());
  }

  TEST_CASE("ties are lexicographic") {
    const auto b = eval::FrequencyBaseline::build({labelled("Z"), labelled("M"), labelled("A"), labelled("M")});
    CHECK(b.ranking() == std::vector<std::string>{"M", "A", "Z"});
  }

  TEST_CASE("same ranking for every input") {
    const auto b = eval::FrequencyBaseline::build({labelled("A"), labelled("A"), labelled("B")});
    const auto res = b.rank_instances({labelled("B", "x"), labelled("B", "y"), labelled("Q")});
    REQUIRE(res.size() == 3);
    CHECK(res[0].rank == 2);
    CHECK(res[1].rank == 2);
    CHECK_FALSE(res[2].rank.has_value());
    CHECK(res[2].instance == 2);
  }

  TEST_CASE("balanced classes give about one over the class count") {
    std::vector<TrainingInstance> corpus;
    std::mt19937_64 rng(1);
    const int classes = 8;
    for (int i = 0; i < 800; ++i) corpus.push_back(labelled("L" + std::to_string(i % classes)));
    std::vector<TrainingInstance> test;
    for (int i = 0; i < 4000; ++i)
      test.push_back(labelled("L" + std::to_string(std::uniform_int_distribution<int>(0, classes - 1)(rng))));
    const auto b = eval::FrequencyBaseline::build(corpus);
    CHECK(eval::topk_accuracy(b.rank_instances(test), 1) == doctest::Approx(1.0 / classes).epsilon(0.15));
  }

  TEST_CASE("empty corpus") { CHECK_THROWS_AS(eval::FrequencyBaseline::build({}), nn::EmptyCorpusError); }
}

TEST_SUITE("reports") {
  TEST_CASE("single instance at rank one") {
    nn::ModelVocabs v;
    v.node_labels = nn::Vocab({"Hole", "java.io.File.exists()"});
    v.classes = nn::Vocab({"A", "B"});
    nn::Network<double> net(small_config(), v);
    for (auto& p : net.params()) p.zero();
    const auto& names = net.param_names();
    net.params()[std::find(names.begin(), names.end(), "out_b") - names.begin()].data = {0, 0, 5};
    const auto r = eval::evaluate(net, {labelled("B")});
    CHECK(r.instances == 1);
    CHECK(r.ks == eval::kDefaultKs);
    for (double a : r.accuracy) CHECK(a == 1.0);
    CHECK(r.mrr == 1.0);
    CHECK(r.model == "full");
    const auto ranked = eval::rank_instances(net, {labelled("A"), labelled("Unknown")});
    CHECK(ranked[0].rank == 2);
    CHECK_FALSE(ranked[1].rank.has_value());
  }

  TEST_CASE("accuracies never decrease in k") {
    std::mt19937_64 rng(2);
    const auto corpus = testing::small_instances(rng, 60, 8, 4, 8);
    auto cfg = small_config();
    cfg.max_epochs = 3;
    const auto trained = nn::train<double>(corpus, corpus, cfg);
    const auto r = eval::evaluate(trained.model, corpus, {1, 2, 3, 5, 10});
    for (std::size_t i = 1; i < r.accuracy.size(); ++i) CHECK(r.accuracy[i] >= r.accuracy[i - 1]);
    CHECK(r.mrr <= r.accuracy.back() + 1e-12);
    CHECK(r.mrr >= 0);
    CHECK(eval::evaluate(trained.model, corpus, {1, 2, 3, 5, 10}).accuracy == r.accuracy);
    CHECK_THROWS_AS(eval::evaluate(trained.model, {}), eval::EmptyResultsError);
  }

  TEST_CASE("reciprocal ranks") {
    const std::vector<eval::PredictionResult> res = {{0, "a", 1}, {1, "b", 4}, {2, "c", std::nullopt}};
    CHECK(eval::reciprocal_ranks(res) == std::vector<double>{1.0, 0.25, 0.0});
  }

  TEST_CASE("text and json layouts") {
    const auto rep = eval::make_report("full", {{0, "a", 1}, {1, "b", 4}, {2, "c", std::nullopt}, {3, "d", 2}},
                                       eval::kDefaultKs);
    auto base = eval::make_report("frequency", {{0, "a", 2}, {1, "b", 1}, {2, "c", 3}, {3, "d", 9}}, eval::kDefaultKs);
    base.comparisons.push_back({"full", eval::mann_whitney_u({0.5, 1, 1.0 / 3, 1.0 / 9}, {1, 0.25, 0, 0.5})});
    const std::string text = eval::format_text({rep, base});
    CHECK(text.rfind("model            instances    top-1    top-5   top-10      MRR\n", 0) == 0);
    CHECK(text.find("full                     4   0.2500   0.7500   0.7500   0.4375\n") != std::string::npos);
    CHECK(text.find("  vs full") != std::string::npos);

    const auto j = nlohmann::ordered_json::parse(eval::format_json({rep, base}));
    REQUIRE(j.size() == 2);
    std::vector<std::string> keys;
    for (auto it = j[0].begin(); it != j[0].end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"model", "instances", "top1", "top5", "top10", "mrr"});
    CHECK(j[0]["mrr"].get<double>() == doctest::Approx(0.4375));
    CHECK(j[1]["comparisons"][0]["exact"].get<bool>());
  }
}
