// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>

#include "apirec/eval/metrics.hpp"
#include "mann_whitney_oracle.hpp"

using namespace apirec::eval;

namespace {

std::vector<PredictionResult> with_ranks(const std::vector<std::optional<int>>& ranks) {
  std::vector<PredictionResult> out;
  for (std::size_t i = 0; i < ranks.size(); ++i) out.push_back({i, "L" + std::to_string(i), ranks[i]});
  return out;
}

std::vector<double> draw(std::mt19937_64& rng, std::size_t n, int levels) {
  std::vector<double> v(n);
  if (levels > 0) {
    std::uniform_int_distribution<int> d(0, levels - 1);
    for (auto& x : v) x = d(rng);
  } else {
    std::uniform_real_distribution<double> d(0, 1);
    for (auto& x : v) x = d(rng);
  }
  return v;
}

}  // namespace

TEST_SUITE("ranking metrics") {
  TEST_CASE("ranks 1, 3, 11") {
    const auto r = with_ranks({1, 3, 11});
    CHECK(topk_accuracy(r, 1) == doctest::Approx(1.0 / 3));
    CHECK(topk_accuracy(r, 5) == doctest::Approx(2.0 / 3));
    CHECK(topk_accuracy(r, 10) == doctest::Approx(2.0 / 3));
    CHECK(mrr(r) == doctest::Approx((1 + 1.0 / 3 + 1.0 / 11) / 3));
    CHECK(mrr(r) == doctest::Approx(0.4747).epsilon(1e-4));
  }

  TEST_CASE("every rank four") {
    CHECK(mrr(with_ranks({4, 4, 4, 4})) == 0.25);
  }

  TEST_CASE("degenerate rankings") {
    const auto ones = with_ranks({1, 1, 1});
    for (int k : {1, 5, 10}) CHECK(topk_accuracy(ones, k) == 1.0);
    const auto absent = with_ranks({std::nullopt, std::nullopt});
    for (int k : {1, 5, 10}) CHECK(topk_accuracy(absent, k) == 0.0);
    CHECK(mrr(absent) == 0.0);
    CHECK(mrr(with_ranks({1})) == 1.0);
  }

  TEST_CASE("monotone in k, MRR below top-infinity") {
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> rank(0, 30);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<std::optional<int>> ranks;
      for (int i = 0; i < 25; ++i) {
        const int r = rank(rng);
        ranks.push_back(r == 0 ? std::nullopt : std::optional<int>(r));
      }
      const auto res = with_ranks(ranks);
      double prev = 0;
      for (int k = 1; k <= 31; ++k) {
        const double a = topk_accuracy(res, k);
        CHECK(a >= prev);
        prev = a;
      }
      CHECK(mrr(res) <= prev + 1e-15);
      CHECK(mrr(res) >= 0.0);
    }
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(topk_accuracy({}, 1), EmptyResultsError);
    CHECK_THROWS_AS(mrr({}), EmptyResultsError);
    CHECK_THROWS_AS(topk_accuracy(with_ranks({1}), 0), std::invalid_argument);
  }
}

TEST_SUITE("mann-whitney") {
  TEST_CASE("separated samples") {
    const auto r = mann_whitney_u({1, 2, 3}, {4, 5, 6});
    CHECK(r.u == 0);
    CHECK(r.exact);
    CHECK(r.p == doctest::Approx(apirec::testing::oracle_exact_p({1, 2, 3}, {4, 5, 6})));
    CHECK(r.p == doctest::Approx(0.1));
  }

  TEST_CASE("identical samples") {
    const std::vector<double> a = {0.2, 0.5, 0.5, 0.9};
    const auto r = mann_whitney_u(a, a);
    CHECK(r.u == 8);
    CHECK(r.p > 0.95);
    CHECK_FALSE(r.significant());
  }

  TEST_CASE("exact branch against the enumeration oracle, every split up to 6+6") {
    std::mt19937_64 rng(10);
    int compared = 0;
    for (std::size_t na = 1; na <= 6; ++na)
      for (std::size_t nb = 1; nb <= 6; ++nb)
        for (int levels : {0, 3, 5})
          for (int rep = 0; rep < 3; ++rep) {
            const auto a = draw(rng, na, levels);
            const auto b = draw(rng, nb, levels);
            const auto r = mann_whitney_u(a, b);
            REQUIRE(r.exact);
            CHECK(r.u == apirec::testing::pairwise_u(a, b));
            CHECK(r.p == doctest::Approx(apirec::testing::oracle_exact_p(a, b)).epsilon(1e-12));
            ++compared;
          }
    CHECK(compared == 324);
  }

  TEST_CASE("swap symmetry") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      const auto a = draw(rng, 1 + trial % 9, trial % 2 ? 4 : 0);
      const auto b = draw(rng, 2 + trial % 13, trial % 2 ? 4 : 0);
      const auto ab = mann_whitney_u(a, b);
      const auto ba = mann_whitney_u(b, a);
      CHECK(ab.u + ba.u == static_cast<double>(a.size() * b.size()));
      CHECK(ab.p == doctest::Approx(ba.p).epsilon(1e-12));
    }
  }

  TEST_CASE("normal approximation tracks the exact p on 6+6") {
    std::mt19937_64 rng(12);
    double worst = 0;
    for (int trial = 0; trial < 300; ++trial) {
      const auto a = draw(rng, 6, 0);
      const auto b = draw(rng, 6, 0);
      worst = std::max(worst, std::abs(mann_whitney_exact(a, b).p - mann_whitney_normal(a, b).p));
    }
    INFO("max |exact - normal| = " << worst);
    CHECK(worst <= 0.02);
  }

  TEST_CASE("large samples use the approximation") {
    std::mt19937_64 rng(13);
    const auto a = draw(rng, 40, 0);
    auto b = draw(rng, 40, 0);
    for (auto& x : b) x += 0.5;
    const auto r = mann_whitney_u(a, b);
    CHECK_FALSE(r.exact);
    CHECK(r.significant());
    CHECK(r.u == apirec::testing::pairwise_u(a, b));
  }

  TEST_CASE("empty samples") {
    CHECK_THROWS_AS(mann_whitney_u({}, {1.0}), EmptySampleError);
    CHECK_THROWS_AS(mann_whitney_u({1.0}, {}), EmptySampleError);
  }
}
