#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "forage/model.hpp"

using namespace forage;

namespace {

Scenario basic_scenario() {
  Scenario sc;
  sc.low = {0.6, 8.0, 2.0, 0.5};
  sc.high = {0.4, 12.0, 1.5, 0.3};
  sc.discount = 1.0;
  sc.alpha = 0.0;
  return sc;
}

}  // namespace

TEST_CASE("regime classification follows the sign of the rate gap") {
  Scenario sc = basic_scenario();
  CHECK(classify_regime(sc) == NewsRegime::GoodNews);
  sc.low.rate_good = 0.5;
  sc.low.rate_bad = 2.0;
  sc.high.rate_good = 0.3;
  sc.high.rate_bad = 1.5;
  CHECK(classify_regime(sc) == NewsRegime::BadNews);
  sc.low.rate_good = sc.low.rate_bad = 1.0;
  sc.high.rate_good = sc.high.rate_bad = 2.0;
  CHECK(classify_regime(sc) == NewsRegime::Balanced);
  sc.low.rate_good = 3.0;  // low drifts down, high does not: mixed signs
  CHECK_THROWS_AS(classify_regime(sc), std::invalid_argument);
}

TEST_CASE("scenario validation rejects structural violations") {
  Scenario sc = basic_scenario();
  CHECK_NOTHROW(sc.validate());
  SUBCASE("reward ordering") {
    sc.high.reward = sc.low.reward;
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
  }
  SUBCASE("high prior below one") {
    sc.high.prior_good = 1.0;
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
  }
  SUBCASE("alpha range") {
    sc.alpha = 1.5;
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
  }
  SUBCASE("positive discount") {
    sc.discount = 0.0;
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
  }
  SUBCASE("at least one arrival rate") {
    sc.low.rate_good = sc.low.rate_bad = 0.0;
    CHECK_THROWS_AS(sc.validate(), std::invalid_argument);
  }
}

TEST_CASE("no-news drift matches direct Bayes updating") {
  // Explicit likelihood-ratio form: no news over [0,t] has probability
  // exp(-a*rate*t) conditional on each quality.
  const double p = 0.37, g = 1.7, b = 0.4, a = 0.6, t = 2.3;
  const double num = p * std::exp(-a * g * t);
  const double den = num + (1.0 - p) * std::exp(-a * b * t);
  CHECK(drift_posterior(p, g, b, a, t) == doctest::Approx(num / den).epsilon(1e-12));

  // Balanced rates and zero attention are both fixed points.
  CHECK(drift_posterior(p, 1.0, 1.0, 0.7, 5.0) == doctest::Approx(p));
  CHECK(drift_posterior(p, g, b, 0.0, 5.0) == doctest::Approx(p));
  // Certainty is absorbing.
  CHECK(drift_posterior(0.0, g, b, a, t) == 0.0);
  CHECK(drift_posterior(1.0, g, b, a, t) == 1.0);
}

TEST_CASE("drift durations invert the drift map") {
  const double p = 0.7, g = 2.0, b = 0.5, a = 0.8;
  const double p_later = drift_posterior(p, g, b, a, 1.7);
  const auto t = drift_time_to(p, p_later, g, b, a);
  REQUIRE(t.has_value());
  CHECK(*t == doctest::Approx(1.7).epsilon(1e-12));

  CHECK(drift_time_to(p, p, g, b, a) == 0.0);
  // Wrong direction: good-news drift cannot raise the belief.
  CHECK_FALSE(drift_time_to(p, 0.9, g, b, a).has_value());
  // No drift at all.
  CHECK_FALSE(drift_time_to(p, 0.5, 1.0, 1.0, a).has_value());
  // Endpoints are unreachable in finite time.
  CHECK_FALSE(drift_time_to(p, 1.0, 0.5, 2.0, a).has_value());
}

TEST_CASE("conclusive news resolves a project exactly once") {
  BeliefState state;
  state.p_low = 0.3;
  state.p_high = 0.8;
  const BeliefState after =
      jump_posterior(state, {ProjectId::High, Valence::Bad});
  CHECK(after.p_high == 0.0);
  CHECK(after.resolved_high == Resolution::KnownBad);
  CHECK(after.p_low == 0.3);
  CHECK(after.resolved_low == Resolution::Unknown);
  CHECK_THROWS_AS(jump_posterior(after, {ProjectId::High, Valence::Good}),
                  std::invalid_argument);
  const BeliefState good =
      jump_posterior(after, {ProjectId::Low, Valence::Good});
  CHECK(good.p_low == 1.0);
  CHECK(good.both_resolved());
}

TEST_CASE("expected discount factor matches quadrature") {
  // E[exp(-r T)] with T ~ Exponential(lam), via composite Simpson.
  const double r = 1.3, lam = 2.4;
  const double upper = 40.0 / lam;
  const int n = 200000;
  const double h = upper / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = i * h;
    const double f = lam * std::exp(-lam * t) * std::exp(-r * t);
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * f;
  }
  sum *= h / 3.0;
  CHECK(expected_discount(r, lam) == doctest::Approx(sum).epsilon(1e-9));
  CHECK(expected_discount(1.0, 0.0) == 0.0);
  CHECK_THROWS_AS(expected_discount(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("favorability compares expected flow values") {
  Scenario sc = basic_scenario();
  // Dyadic values so the expected flows tie exactly: 0.5*8 == 0.25*16.
  sc.low.prior_good = 0.5;
  sc.low.reward = 8.0;
  sc.high.prior_good = 0.25;
  sc.high.reward = 16.0;
  BeliefState state = initial_beliefs(sc);
  CHECK(expected_value(state, sc, ProjectId::Low) == 4.0);
  CHECK(expected_value(state, sc, ProjectId::High) == 4.0);
  CHECK(favorable(state, sc) == Favored::Both);
  state.p_high = 0.5;
  CHECK(favorable(state, sc) == Favored::High);
  state.p_high = 0.125;
  CHECK(favorable(state, sc) == Favored::Low);
}

TEST_CASE("allocation validation enforces budgets and the alpha floor") {
  Allocation alloc;
  alloc.explore_low = 0.0;
  alloc.explore_high = 1.0;
  alloc.exploit_low = 1.0;
  alloc.exploit_high = 0.0;
  CHECK_NOTHROW(validate_allocation(alloc, 0.0));
  // Fully disentangled: exploit low, explore high. Illegal at alpha > 0.
  CHECK_THROWS_AS(validate_allocation(alloc, 0.5), std::logic_error);
  alloc.explore_low = 0.5;
  alloc.explore_high = 0.5;
  CHECK_NOTHROW(validate_allocation(alloc, 0.5));
  alloc.explore_high = 0.4;  // budget no longer sums to one
  CHECK_THROWS_AS(validate_allocation(alloc, 0.0), std::logic_error);
  alloc.explore_high = 0.5;
  alloc.exploit_low = 1.2;
  CHECK_THROWS_AS(validate_allocation(alloc, 0.0), std::logic_error);
}
