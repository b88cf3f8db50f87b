// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "apirec/nn/model.hpp"
#include "apirec/nn/predict.hpp"
#include "gradcheck.hpp"
#include "random_graphs.hpp"

using namespace apirec;
using nn::Matrix;
using nn::Network;

namespace {

double sig(double x) { return 1 / (1 + std::exp(-x)); }

nn::ModelConfig tiny_config(int d, int steps) {
  nn::ModelConfig cfg;
  cfg.embedding_size = d;
  cfg.hidden_size = d;
  cfg.hidden_layers = 3;
  cfg.propagation_steps = steps;
  cfg.precision = nn::Precision::F64;
  cfg.min_class_freq = 1;
  return cfg;
}

nn::ModelVocabs abc_vocabs() {
  nn::ModelVocabs v;
  v.node_labels = nn::Vocab({"A", "B", "C", "Hole"});
  v.classes = nn::Vocab({"A", "B", "C"});
  v.tokens = nn::Vocab({"file", "read", "write"});
  return v;
}

template <typename T>
void set(Network<T>& net, const std::string& name, std::vector<T> values) {
  const auto& names = net.param_names();
  const auto it = std::find(names.begin(), names.end(), name);
  REQUIRE(it != names.end());
  auto& m = net.params()[static_cast<std::size_t>(it - names.begin())];
  REQUIRE(m.data.size() == values.size());
  m.data = std::move(values);
}

template <typename T>
void zero_all(Network<T>& net) {
  for (auto& p : net.params()) p.zero();
}

ApiContextGraph graph(std::vector<std::string> labels, std::vector<Edge> edges) {
  ApiContextGraph g;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    g.nodes.push_back({static_cast<int>(i), labels[i], std::nullopt});
    if (labels[i] == "Hole") g.hole = static_cast<int>(i);
  }
  g.edges = std::move(edges);
  return g;
}

double gru(double m, double h) {
  const double z = sig(0.3 * m + 0.05 + 0.5 * h);
  const double r = sig(-0.2 * m - 0.05 + 0.6 * h);
  const double c = std::tanh(0.9 * m + 0.1 - 0.8 * (r * h));
  return (1 - z) * h + z * c;
}

Network<double> hand_set_network(int steps) {
  Network<double> net(tiny_config(1, steps), abc_vocabs());
  zero_all(net);
  set(net, "node_embed", {0.0, 0.5, -0.3, 0.9, 0.2});
  set(net, "edge_w_c_in", {0.7});
  set(net, "edge_b_c_in", {0.1});
  set(net, "edge_w_c_out", {-0.4});
  set(net, "edge_b_c_out", {0.2});
  set(net, "gru_w", {0.3, -0.2, 0.9});
  set(net, "gru_u_zr", {0.5, 0.6});
  set(net, "gru_u_h", {-0.8});
  set(net, "gru_b", {0.05, -0.05, 0.1});
  return net;
}

}  // namespace

TEST_SUITE("propagation") {
  TEST_CASE("zero steps keep the label embedding") {
    auto net = hand_set_network(0);
    const auto states = net.propagate(net.encode(graph({"A", "B"}, {{0, 1, EdgeType::C}}), {}));
    REQUIRE(states.size() == 1);
    CHECK(states[0].data == std::vector<double>{0.5, -0.3});
  }

  TEST_CASE("single node runs the GRU on a zero message") {
    auto net = hand_set_network(3);
    const auto states = net.propagate(net.encode(graph({"C"}, {}), {}));
    double h = 0.9;
    for (int t = 1; t <= 3; ++t) {
      h = gru(0.0, h);
      CHECK(states[t](0, 0) == doctest::Approx(h).epsilon(1e-14));
    }
  }

  TEST_CASE("two nodes, one edge, one step") {
    auto net = hand_set_network(1);
    const auto states = net.propagate(net.encode(graph({"A", "B"}, {{0, 1, EdgeType::C}}), {}));
    const double m0 = -0.4 * -0.3 + 0.2;  // along the outgoing edge
    const double m1 = 0.7 * 0.5 + 0.1;    // along the incoming edge
    CHECK(states[1](0, 0) == doctest::Approx(gru(m0, 0.5)).epsilon(1e-14));
    CHECK(states[1](1, 0) == doctest::Approx(gru(m1, -0.3)).epsilon(1e-14));
  }

  TEST_CASE("edge types use their own weights") {
    auto net = hand_set_network(1);
    const auto states = net.propagate(net.encode(graph({"A", "B"}, {{0, 1, EdgeType::D}}), {}));
    // d weights are zero here
    CHECK(states[1](0, 0) == doctest::Approx(gru(0.0, 0.5)).epsilon(1e-14));
    CHECK(states[1](1, 0) == doctest::Approx(gru(0.0, -0.3)).epsilon(1e-14));
  }

  TEST_CASE("disconnected nodes do not interact") {
    nn::ModelConfig cfg = tiny_config(4, 3);
    Network<double> net(cfg, abc_vocabs());
    const auto a = net.propagate(net.encode(graph({"A", "B"}, {}), {}));
    const auto c = net.propagate(net.encode(graph({"C", "B"}, {}), {}));
    CHECK(std::equal(a.back().row(1), a.back().row(1) + 4, c.back().row(1)));
    CHECK_FALSE(std::equal(a.back().row(0), a.back().row(0) + 4, c.back().row(0)));
  }

  TEST_CASE("empty graph") {
    Network<double> net(tiny_config(2, 1), abc_vocabs());
    CHECK_THROWS_AS(net.propagate(net.encode(ApiContextGraph{}, {})), nn::EmptyGraphError);
  }
}

TEST_SUITE("readout") {
  TEST_CASE("zero attention gives a zero vector") {
    Network<double> net(tiny_config(3, 2), abc_vocabs());
    for (const char* n : {"attn_i_w", "attn_i_b", "attn_j_w", "attn_j_b"}) {
      const auto& names = net.param_names();
      net.params()[std::find(names.begin(), names.end(), n) - names.begin()].zero();
    }
    const auto b = net.encode(graph({"A", "B", "Hole"}, {{0, 1, EdgeType::C}, {1, 2, EdgeType::S}}), {});
    const auto xg = net.readout(net.propagate(b), b);
    for (double v : xg.data) CHECK(v == 0.0);
  }

  TEST_CASE("single node against direct evaluation") {
    auto net = hand_set_network(2);
    set(net, "attn_i_w", {0.4, -0.7});
    set(net, "attn_i_b", {0.2});
    set(net, "attn_j_w", {1.1, 0.3});
    set(net, "attn_j_b", {-0.1});
    const auto b = net.encode(graph({"B"}, {}), {});
    const auto states = net.propagate(b);
    const double h0 = -0.3;
    const double hT = gru(0.0, gru(0.0, h0));
    const double want = std::tanh(sig(0.4 * hT - 0.7 * h0 + 0.2) * std::tanh(1.1 * hT + 0.3 * h0 - 0.1));
    CHECK(net.readout(states, b)(0, 0) == doctest::Approx(want).epsilon(1e-14));
  }

  TEST_CASE("a closed gate removes the node") {
    auto net = hand_set_network(0);
    set(net, "node_embed", {0.0, -1.0, 0.8, 0.0, 0.0});
    set(net, "attn_i_w", {0.0, 1000.0});
    set(net, "attn_j_w", {0.6, -0.9});
    set(net, "attn_j_b", {0.3});
    const auto both = net.encode(graph({"A", "B"}, {}), {});
    const auto only_b = net.encode(graph({"B"}, {}), {});
    CHECK(net.readout(net.propagate(both), both)(0, 0) == net.readout(net.propagate(only_b), only_b)(0, 0));
  }
}

TEST_SUITE("token network") {
  TEST_CASE("empty bag") {
    Network<double> net(tiny_config(3, 1), abc_vocabs());
    const auto xt = net.token_vectors(net.encode(graph({"A"}, {}), {}));
    for (double v : xt.data) CHECK(v == 0.0);
  }

  TEST_CASE("single token against direct evaluation") {
    auto net = hand_set_network(1);
    set(net, "token_embed", {0.0, 0.6, 0.0, 0.0});
    set(net, "token_w0", {0.8});
    set(net, "token_b0", {0.1});
    set(net, "token_w1", {-1.2});
    set(net, "token_w2", {0.5});
    set(net, "token_b2", {-0.2});
    const auto xt = net.token_vectors(net.encode(graph({"A"}, {}), {"file"}));
    const double want = std::tanh(0.5 * std::tanh(-1.2 * std::tanh(0.8 * 0.6 + 0.1)) - 0.2);
    CHECK(xt(0, 0) == doctest::Approx(want).epsilon(1e-14));
  }

  TEST_CASE("bag order does not matter") {
    Network<double> net(tiny_config(4, 1), abc_vocabs());
    const auto g = graph({"A"}, {});
    CHECK(net.token_vectors(net.encode(g, {"read", "file"})) == net.token_vectors(net.encode(g, {"file", "read"})));
    auto b = net.encode(g, {"file", "read", "write"});
    const auto base = net.token_vectors(b);
    std::reverse(b.token_id.begin(), b.token_id.end());
    const auto rev = net.token_vectors(b);
    for (std::size_t i = 0; i < base.data.size(); ++i) CHECK(rev.data[i] == doctest::Approx(base.data[i]).epsilon(1e-14));
  }
}

TEST_SUITE("classifier") {
  TEST_CASE("zero output layer is uniform") {
    Network<double> net(tiny_config(3, 1), abc_vocabs());
    const auto& names = net.param_names();
    for (const char* n : {"out_w", "out_b"}) net.params()[std::find(names.begin(), names.end(), n) - names.begin()].zero();
    const auto p = net.probabilities(net.encode(graph({"A", "B"}, {{0, 1, EdgeType::C}}), {"file"}));
    for (double v : p.data) CHECK(v == doctest::Approx(0.25).epsilon(1e-15));
    TrainingInstance inst{graph({"A"}, {}), {}, "B"};
    CHECK(net.loss(net.encode(std::vector<TrainingInstance>{inst}), false, 0) == doctest::Approx(std::log(4.0)));
  }

  TEST_CASE("two-class softmax by hand") {
    nn::ModelVocabs v = abc_vocabs();
    v.classes = nn::Vocab({"A"});
    Network<double> net(tiny_config(1, 1), v);
    zero_all(net);
    set(net, "out_b", {std::log(2.0), 0.0});
    Matrix<double> xg(1, 1), xt(1, 1);
    const auto p = net.classify(xg, xt);
    CHECK(p(0, 0) == doctest::Approx(2.0 / 3).epsilon(1e-15));
    CHECK(p(0, 1) == doctest::Approx(1.0 / 3).epsilon(1e-15));
  }

  TEST_CASE("a confident correct prediction has near-zero loss") {
    Network<double> net(tiny_config(2, 1), abc_vocabs());
    zero_all(net);
    set(net, "out_b", {0.0, 0.0, 60.0, 0.0});
    TrainingInstance inst{graph({"A"}, {}), {}, "B"};
    CHECK(net.loss(net.encode(std::vector<TrainingInstance>{inst}), false, 0) < 1e-20);
  }

  TEST_CASE("probabilities sum to one") {
    std::mt19937_64 rng(8);
    const auto insts = testing::small_instances(rng, 40, 8, 4, 8);
    const auto vocabs = nn::ModelVocabs::build(insts, 1);
    for (auto prec : {nn::Precision::F32, nn::Precision::F64}) {
      auto cfg = tiny_config(8, 3);
      cfg.precision = prec;
      auto check = [&](const auto& net) {
        const auto p = net.probabilities(net.encode(insts));
        for (int r = 0; r < p.rows; ++r) {
          const double s = std::accumulate(p.row(r), p.row(r) + p.cols, 0.0);
          CHECK(std::abs(s - 1.0) <= 1e-6);
        }
      };
      if (prec == nn::Precision::F32) check(Network<float>(cfg, vocabs));
      else check(Network<double>(cfg, vocabs));
    }
  }
}

TEST_SUITE("gradients") {
  TEST_CASE("finite differences, inference and dropout") {
    std::mt19937_64 rng(17);
    for (int round = 0; round < 3; ++round) {
      const auto insts = testing::small_instances(rng, 3, 6, 4, 8);
      auto cfg = tiny_config(3, 1 + round);
      cfg.keep_prob = 0.75;
      cfg.seed = 100 + round;
      Network<double> net(cfg, nn::ModelVocabs::build(insts, 1));
      for (bool train : {false, true}) {
        const auto r = testing::check_gradients(net, net.encode(insts), train, 55 + round);
        INFO("worst " << r.worst);
        CHECK(r.max_rel_err < 1e-4);
        CHECK(r.entries > 300);
      }
    }
  }

  TEST_CASE("structure-only skips the token network") {
    std::mt19937_64 rng(18);
    const auto insts = testing::small_instances(rng, 3, 6, 4, 8);
    auto cfg = tiny_config(3, 2);
    cfg.structure_only = true;
    Network<double> net(cfg, nn::ModelVocabs::build(insts, 1));
    auto grads = net.zeros_like();
    net.loss(net.encode(insts), true, 1, &grads);
    const auto& names = net.param_names();
    for (std::size_t k = 0; k < names.size(); ++k)
      if (names[k].rfind("token_", 0) == 0)
        for (double g : grads[k].data) CHECK(g == 0.0);
    CHECK(testing::check_gradients(net, net.encode(insts), true, 3).max_rel_err < 1e-4);
  }
}

TEST_SUITE("invariances") {
  TEST_CASE("structure-only gives identical distributions for identical graphs") {
    const auto g = graph({"A", "B", "Hole"}, {{0, 1, EdgeType::C}, {1, 2, EdgeType::S}});
    auto cfg = tiny_config(6, 3);
    Network<double> full(cfg, abc_vocabs());
    cfg.structure_only = true;
    Network<double> so(cfg, abc_vocabs());
    CHECK(so.probabilities(so.encode(g, {"file"})) == so.probabilities(so.encode(g, {"read", "write"})));
    CHECK_FALSE(full.probabilities(full.encode(g, {"file"})) == full.probabilities(full.encode(g, {"read", "write"})));
  }

  TEST_CASE("renumbering nodes leaves the graph vector unchanged") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 30; ++i) {
      const auto m = testing::random_method(rng, 10);
      const auto& g = m.graph;
      std::set<std::string> labels;
      for (const auto& n : g.nodes) labels.insert(n.label);
      nn::ModelVocabs v;
      v.node_labels = nn::Vocab({labels.begin(), labels.end()});
      v.classes = nn::Vocab({"x"});
      Network<double> net(tiny_config(5, 3), v);

      std::vector<int> perm(g.nodes.size());
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      ApiContextGraph h;
      h.nodes.resize(g.nodes.size());
      for (const auto& n : g.nodes) h.nodes[perm[n.id]] = {perm[n.id], n.label, std::nullopt};
      for (const auto& e : g.edges) h.edges.push_back({perm[e.src], perm[e.dst], e.type});
      normalize_edges(h.edges);

      const auto bg = net.encode(g, {});
      const auto bh = net.encode(h, {});
      const auto xg = net.readout(net.propagate(bg), bg);
      const auto xh = net.readout(net.propagate(bh), bh);
      for (int j = 0; j < 5; ++j) CHECK(xh(0, j) == doctest::Approx(xg(0, j)).epsilon(1e-12));
    }
  }

  TEST_CASE("batching does not change per-graph results") {
    std::mt19937_64 rng(4);
    const auto insts = testing::small_instances(rng, 6, 8, 4, 8);
    Network<double> net(tiny_config(4, 2), nn::ModelVocabs::build(insts, 1));
    const auto all = net.probabilities(net.encode(insts));
    for (std::size_t i = 0; i < insts.size(); ++i) {
      const auto one = net.probabilities(net.encode(std::vector<TrainingInstance>{insts[i]}));
      for (int c = 0; c < one.cols; ++c) CHECK(one(0, c) == doctest::Approx(all(static_cast<int>(i), c)).epsilon(1e-14));
    }
  }
}

TEST_SUITE("vocabularies and prediction") {
  TEST_CASE("class vocabulary respects the frequency cut") {
    std::vector<TrainingInstance> insts = {
        {graph({"A", "Hole"}, {{0, 1, EdgeType::S}}), {"file"}, "X"},
        {graph({"B", "Hole"}, {{0, 1, EdgeType::S}}), {"read"}, "X"},
        {graph({"A", "Hole"}, {{0, 1, EdgeType::S}}), {}, "Y"}};
    const auto v = nn::ModelVocabs::build(insts, 2);
    CHECK(v.classes.items() == std::vector<std::string>{"<unk>", "X"});
    CHECK(v.node_labels.items() == std::vector<std::string>{"<unk>", "A", "B", "Hole"});
    CHECK(v.tokens.items() == std::vector<std::string>{"<unk>", "file", "read"});
    CHECK(v.classes.lookup("Y") == nn::kUnk);
  }

  TEST_CASE("ties break by label and UNK is never returned") {
    Network<double> net(tiny_config(2, 1), abc_vocabs());
    const auto& names = net.param_names();
    for (const char* n : {"out_w", "out_b"}) net.params()[std::find(names.begin(), names.end(), n) - names.begin()].zero();
    const auto g = graph({"A", "Hole"}, {{0, 1, EdgeType::S}});
    const auto recs = nn::predict(net, g, {}, 10);
    REQUIRE(recs.size() == 3);
    CHECK(recs[0].label == "A");
    CHECK(recs[1].label == "B");
    CHECK(recs[2].label == "C");
    CHECK(nn::predict(net, g, {}, 2).size() == 2);
    CHECK_THROWS_AS(nn::predict(net, graph({"A"}, {}), {}, 3), nn::NoHoleError);
  }

  TEST_CASE("ranking is by descending probability") {
    Network<double> net(tiny_config(2, 1), abc_vocabs());
    const std::vector<double> probs = {0.4, 0.1, 0.3, 0.2};
    CHECK(nn::rank_classes(probs.data(), net.vocabs().classes) == std::vector<int>{2, 3, 1});
    CHECK(nn::rank_of(probs.data(), net.vocabs().classes, 3) == 2);
    CHECK(nn::rank_of(probs.data(), net.vocabs().classes, nn::kUnk) == 0);
  }
}
