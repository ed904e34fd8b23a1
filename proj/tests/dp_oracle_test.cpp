#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "forage/closedform.hpp"
#include "forage/dp_oracle.hpp"

using namespace forage;

namespace {

Scenario safe_scenario(bool good_news, double alpha) {
  Scenario sc;
  sc.low = {1.0, 10.0, good_news ? 5.0 : 0.0, good_news ? 0.0 : 5.0};
  sc.high = {0.5, 15.0, good_news ? 5.0 : 0.0, good_news ? 0.0 : 5.0};
  sc.discount = 1.0;
  sc.alpha = alpha;
  return sc;
}

}  // namespace

TEST_CASE("safe-case values converge and respect global bounds") {
  for (const bool good_news : {true, false}) {
    const Scenario sc = safe_scenario(good_news, 0.0);
    const SafeValueGrid grid = value_iteration_safe(sc, 1e-3, 200);
    CHECK(grid.sup_change <= 1e-10);
    CHECK(grid.iterations < 20000);
    double prev = 0.0;
    for (std::size_t i = 0; i < grid.p.size(); ++i) {
      const double p = grid.p[i];
      const double v = grid.value[i];
      // Between the no-learning value and the full-information value.
      CHECK(v >= std::max(10.0, p * 15.0) - 1e-8);
      CHECK(v <= p * 15.0 + (1.0 - p) * 10.0 + 1e-8);
      CHECK(v >= prev - 1e-10);  // nondecreasing in the belief
      prev = v;
    }
  }
}

TEST_CASE("safe-case values match the closed forms at both extremes") {
  for (const bool good_news : {true, false}) {
    const NewsRegime regime =
        good_news ? NewsRegime::GoodNews : NewsRegime::BadNews;
    for (const double alpha : {0.0, 1.0}) {
      const Scenario sc = safe_scenario(good_news, alpha);
      const SafeValueGrid grid = value_iteration_safe(sc, 5e-4, 400);
      for (std::size_t i = 4; i + 4 < grid.p.size(); i += 8) {
        const double p = grid.p[i];
        const double closed =
            alpha == 0.0
                ? disentangled_payoff(p, 1.0, 5.0, regime, 10.0, 15.0)
                : entangled_payoff(p, 1.0, 5.0, regime, 10.0, 15.0);
        CHECK(grid.value[i] == doctest::Approx(closed).epsilon(5e-4));
      }
    }
  }
}

TEST_CASE("tighter entanglement never increases the safe-case value") {
  for (const bool good_news : {true, false}) {
    const Scenario loose = safe_scenario(good_news, 0.0);
    const Scenario mid = safe_scenario(good_news, 0.5);
    const Scenario tight = safe_scenario(good_news, 1.0);
    const SafeValueGrid g0 = value_iteration_safe(loose, 1e-3, 200);
    const SafeValueGrid g5 = value_iteration_safe(mid, 1e-3, 200);
    const SafeValueGrid g1 = value_iteration_safe(tight, 1e-3, 200);
    for (std::size_t i = 0; i < g0.p.size(); ++i) {
      CHECK(g0.value[i] >= g5.value[i] - 1e-8);
      CHECK(g5.value[i] >= g1.value[i] - 1e-8);
    }
  }
}

TEST_CASE("a larger risky reward never decreases the safe-case value") {
  Scenario sc = safe_scenario(true, 0.0);
  const SafeValueGrid base = value_iteration_safe(sc, 1e-3, 200);
  sc.high.reward = 18.0;
  const SafeValueGrid richer = value_iteration_safe(sc, 1e-3, 200);
  for (std::size_t i = 0; i < base.p.size(); ++i)
    CHECK(richer.value[i] >= base.value[i] - 1e-8);
}

TEST_CASE("the step-size bound is enforced") {
  const Scenario sc = safe_scenario(true, 0.0);  // rates of 5
  CHECK_THROWS_AS(value_iteration_safe(sc, 0.05, 100), std::invalid_argument);
  CHECK_NOTHROW(value_iteration_safe(sc, 1e-3, 100));
}

TEST_CASE("two-risky values respect bounds and embed the resolved boundary") {
  Scenario sc;
  sc.low = {0.6, 8.0, 2.0, 0.5};
  sc.high = {0.5, 12.0, 1.5, 0.3};
  sc.discount = 1.0;
  sc.alpha = 0.0;
  const int n = 120;
  const double delta = default_delta(sc);
  const TwoRiskyGrid grid = value_iteration_two_risky(sc, delta, n);
  CHECK(grid.sup_change <= 1e-10);
  for (int i = 1; i < n; i += 7)
    for (int j = 1; j < n; j += 7) {
      const double pl = grid.p_low[i], ph = grid.p_high[j];
      const double v = grid.value[grid.at(i, j)];
      CHECK(v >= std::max(pl * 8.0, ph * 12.0) - 1e-8);
      CHECK(v <= ph * 12.0 + (1.0 - ph) * pl * 8.0 + 1e-8);
    }

  // Along p_low = 1 the problem reduces to the safe-low case with the
  // same discretization, so values should agree closely.
  Scenario safe = sc;
  safe.low.prior_good = 1.0;
  const SafeValueGrid edge = value_iteration_safe(safe, delta, n);
  for (int j = 0; j <= n; j += 5)
    CHECK(grid.value[grid.at(n, j)] ==
          doctest::Approx(edge.value[j]).epsilon(1e-6));
}

TEST_CASE("two-risky values are monotone in each prior") {
  Scenario sc;
  sc.low = {0.5, 8.0, 0.4, 2.0};
  sc.high = {0.4, 12.0, 0.3, 1.5};
  sc.discount = 1.0;
  sc.alpha = 0.0;
  const int n = 100;
  const TwoRiskyGrid grid = value_iteration_two_risky(sc, default_delta(sc), n);
  for (int i = 0; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      CHECK(grid.value[grid.at(i, j)] >=
            grid.value[grid.at(i, j - 1)] - 1e-9);
      CHECK(grid.value[grid.at(j, i)] >=
            grid.value[grid.at(j - 1, i)] - 1e-9);
    }
}

TEST_CASE("two-risky solver rejects entangled scenarios") {
  Scenario sc;
  sc.low = {0.6, 8.0, 2.0, 2.0};
  sc.high = {0.5, 12.0, 1.5, 1.5};
  sc.discount = 1.0;
  sc.alpha = 0.5;
  CHECK_THROWS_AS(value_iteration_two_risky(sc, 1e-3, 50),
                  std::invalid_argument);
}

TEST_CASE("threshold extraction reports the midpoint crossing") {
  const std::vector<double> axis = {0.0, 0.1, 0.2, 0.3, 0.4};
  CHECK(extract_threshold(axis, {0, 0, 1, 1, 1}) == doctest::Approx(0.15));
  CHECK(extract_threshold(axis, {1, 1, 1, 0, 0}) == doctest::Approx(0.25));
  CHECK_THROWS_AS(extract_threshold(axis, {1, 1, 1, 1, 1}),
                  std::runtime_error);
  CHECK_THROWS_AS(extract_threshold(axis, {0, 1, 0, 1, 0}),
                  std::runtime_error);
}
