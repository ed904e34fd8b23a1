#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <memory>
#include <vector>

#include "doctest.h"
#include "forage/closedform.hpp"
#include "forage/policy.hpp"
#include "forage/rng.hpp"
#include "forage/simulate.hpp"

using namespace forage;

namespace {

Scenario safe_scenario(double p_high, double alpha) {
  Scenario sc;
  sc.low = {1.0, 10.0, 5.0, 0.0};
  sc.high = {p_high, 15.0, 5.0, 0.0};
  sc.discount = 1.0;
  sc.alpha = alpha;
  return sc;
}

/// Deliberately suboptimal comparison policy: always explores one fixed
/// project (even after it resolves) and exploits myopically.
class FixedExplorePolicy final : public PolicyBase {
 public:
  FixedExplorePolicy(const Scenario& scenario, ProjectId target)
      : scenario_(scenario), target_(target) {}

  Allocation decide(const BeliefState& state, double) const override {
    Allocation alloc;
    (target_ == ProjectId::Low ? alloc.explore_low : alloc.explore_high) = 1.0;
    const bool high = expected_value(state, scenario_, ProjectId::High) >=
                      expected_value(state, scenario_, ProjectId::Low);
    (high ? alloc.exploit_high : alloc.exploit_low) = 1.0;
    return alloc;
  }

  std::optional<double> next_change(const BeliefState& state,
                                    double) const override {
    // Re-evaluate the myopic exploitation choice on a short cadence; the
    // exploration target never changes.
    const ProjectId ex = expected_value(state, scenario_, ProjectId::High) >=
                                 expected_value(state, scenario_, ProjectId::Low)
                             ? ProjectId::High
                             : ProjectId::Low;
    (void)ex;
    return 0.05 / scenario_.discount;
  }

 private:
  Scenario scenario_;
  ProjectId target_;
};

Policy fixed_explore(const Scenario& sc, ProjectId target) {
  PolicyDescriptor d;
  d.name = "fixed-explore";
  d.initial_explored = target;
  return Policy(std::make_shared<FixedExplorePolicy>(sc, target), d);
}

/// Monte Carlo comparison under common random numbers: the reference
/// policy must not be beaten by more than combined noise.
void check_not_dominated(const Policy& reference, const Policy& rival,
                         const Scenario& sc, std::uint64_t seed) {
  const long n = 4000;
  const double horizon = default_horizon(sc);
  const MonteCarloReport a = monte_carlo(reference, sc, n, horizon, seed);
  const MonteCarloReport b = monte_carlo(rival, sc, n, horizon, seed);
  CHECK(a.mean >= b.mean - 3.0 * (a.std_error + b.std_error));
}

}  // namespace

TEST_CASE("safe policy follows its cutoff and honors the alpha floor") {
  const Scenario sc = safe_scenario(0.5, 0.25);
  const Policy policy = safe_project_policy(sc);
  REQUIRE(policy.descriptor().exploit_cutoff.has_value());
  const double cutoff = *policy.descriptor().exploit_cutoff;
  CHECK(cutoff ==
        doctest::Approx(exploitation_cutoff(0.25, 1.0, 5.0, 10.0, 15.0)));

  BeliefState state = initial_beliefs(sc);
  state.p_high = cutoff + 0.05;
  Allocation above = policy.decide(state, 0.0);
  CHECK(above.exploit_high == 1.0);
  CHECK(above.explore_high == 1.0);

  state.p_high = cutoff - 0.05;
  Allocation below = policy.decide(state, 0.0);
  CHECK(below.exploit_low == 1.0);
  // Entanglement keeps alpha of the attention on the exploited project.
  CHECK(below.explore_low == doctest::Approx(0.25));
  CHECK(below.explore_high == doctest::Approx(0.75));
  CHECK_NOTHROW(validate_allocation(below, sc.alpha));

  // Resolution dominates the cutoff rule.
  state = jump_posterior(state, {ProjectId::High, Valence::Good});
  CHECK(policy.decide(state, 0.0).exploit_high == 1.0);
}

TEST_CASE("balanced policy explores the larger index and exploits myopically") {
  Scenario sc;
  sc.low = {0.6, 8.0, 1.5, 1.5};
  sc.high = {0.4, 12.0, 0.8, 0.8};
  sc.discount = 1.0;
  sc.alpha = 0.0;
  const Policy policy = balanced_policy(sc);
  const BeliefState state = initial_beliefs(sc);
  const BalancedIndexReport report = balanced_index(sc, state);
  const Allocation alloc = policy.decide(state, 0.0);
  if (report.explored_first == Favored::Low)
    CHECK(alloc.explore_low == 1.0);
  else if (report.explored_first == Favored::High)
    CHECK(alloc.explore_high == 1.0);
  // No news means no belief motion and no scheduled change.
  CHECK_FALSE(policy.next_change(state, 0.0).has_value());
}

TEST_CASE("good-news policy respects the single-switch structure") {
  Scenario sc;
  sc.low = {0.7, 9.0, 2.0, 0.5};
  sc.high = {0.5, 14.0, 1.5, 0.3};
  sc.discount = 1.0;
  sc.alpha = 0.0;
  const Policy policy = good_news_policy(sc);
  const std::vector<TimelinePoint> timeline =
      no_news_timeline(policy, sc, 50.0);
  int explore_switches = 0;
  for (std::size_t i = 1; i < timeline.size(); ++i) {
    const bool now = timeline[i].alloc.explore_high > 0.5;
    const bool before = timeline[i - 1].alloc.explore_high > 0.5;
    if (now != before) ++explore_switches;
    CHECK_NOTHROW(validate_allocation(timeline[i].alloc, sc.alpha));
  }
  CHECK(explore_switches <= 1);
}

TEST_CASE("bad-news policy switches exploration to High at its threshold") {
  Scenario sc;
  sc.low = {0.6, 9.0, 0.3, 2.0};
  sc.high = {0.35, 14.0, 0.2, 1.5};
  sc.discount = 1.0;
  sc.alpha = 0.0;
  const Policy policy = bad_news_policy(sc);
  const double threshold = low_belief_switch_threshold(sc);

  BeliefState state = initial_beliefs(sc);
  state.p_low = threshold - 0.05;
  CHECK(policy.decide(state, 0.0).explore_low == 1.0);
  state.p_low = threshold + 0.05;
  CHECK(policy.decide(state, 0.0).explore_high == 1.0);
  // Once High is favorable, exploring Low is pointless even below the
  // threshold: its only upside is already dominated.
  state.p_low = threshold - 0.05;
  state.p_high = 0.9;
  CHECK(policy.decide(state, 0.0).explore_high == 1.0);
}

TEST_CASE("classical baseline requires full entanglement") {
  Scenario sc;
  sc.low = {0.8, 10.0, 0.0, 2.0};
  sc.high = {0.3, 15.0, 0.0, 2.0};
  sc.discount = 1.0;
  sc.alpha = 1.0;
  const Policy policy = classical_policy(sc);
  // Index of Low: .8*10*3/(1+1.6) = 9.23 beats High's 8.44.
  const Allocation alloc = policy.decide(initial_beliefs(sc), 0.0);
  CHECK(alloc.exploit_low == 1.0);
  CHECK(alloc.explore_low == 1.0);

  sc.alpha = 0.0;
  CHECK_THROWS_AS(classical_policy(sc), std::domain_error);
}

TEST_CASE("optimal policy dispatches on structure") {
  CHECK(optimal_policy(safe_scenario(0.5, 0.7)).descriptor().name ==
        "safe-cutoff");
  Scenario two;
  two.low = {0.6, 8.0, 1.5, 1.5};
  two.high = {0.4, 12.0, 0.8, 0.8};
  two.discount = 1.0;
  two.alpha = 0.0;
  CHECK(optimal_policy(two).descriptor().name == "balanced-index");
  two.alpha = 0.5;  // no optimal rule implemented at interior alpha
  CHECK_THROWS_AS(optimal_policy(two), std::domain_error);
}

TEST_CASE("no-news timeline is consistent") {
  Scenario sc;
  sc.low = {0.6, 9.0, 0.3, 2.0};
  sc.high = {0.35, 14.0, 0.2, 1.5};
  sc.discount = 1.0;
  sc.alpha = 0.0;
  const std::vector<TimelinePoint> timeline =
      no_news_timeline(bad_news_policy(sc), sc, 50.0);
  REQUIRE(!timeline.empty());
  CHECK(timeline.front().t == 0.0);
  for (std::size_t i = 1; i < timeline.size(); ++i) {
    CHECK(timeline[i].t > timeline[i - 1].t);
    CHECK(timeline[i].t <= 50.0 + 1e-9);
  }
}

TEST_CASE("optimal policies are not beaten by structured perturbations") {
  CounterRng rng(2026, 99);
  const auto draw = [&](double lo, double hi) {
    return lo + (hi - lo) * rng.uniform();
  };

  SUBCASE("safe case: perturbed cutoffs") {
    for (int k = 0; k < 4; ++k) {
      const Scenario sc = safe_scenario(draw(0.2, 0.9), 0.0);
      const Policy best = safe_project_policy(sc);
      const double cutoff = *best.descriptor().exploit_cutoff;
      for (const double factor : {0.75, 1.25}) {
        SafeOptions opts;
        opts.cutoff = std::min(0.99, cutoff * factor);
        check_not_dominated(best, safe_project_policy(sc, opts), sc,
                            1000 + 10 * k);
      }
    }
  }

  SUBCASE("balanced: fixed exploration targets") {
    for (int k = 0; k < 4; ++k) {
      Scenario sc;
      const double r_low = draw(1.0, 8.0);
      sc.low = {draw(0.1, 0.9), r_low, 0.0, 0.0};
      sc.high = {draw(0.1, 0.9), r_low + draw(0.5, 6.0), 0.0, 0.0};
      sc.low.rate_good = sc.low.rate_bad = draw(0.3, 3.0);
      sc.high.rate_good = sc.high.rate_bad = draw(0.3, 3.0);
      sc.discount = 1.0;
      sc.alpha = 0.0;
      const Policy best = balanced_policy(sc);
      for (const ProjectId target : {ProjectId::Low, ProjectId::High})
        check_not_dominated(best, fixed_explore(sc, target), sc, 2000 + 10 * k);
    }
  }

  SUBCASE("good news: swapped initial exploration") {
    for (int k = 0; k < 4; ++k) {
      Scenario sc;
      const double r_low = draw(2.0, 8.0);
      sc.low = {draw(0.2, 0.8), r_low, draw(0.5, 2.5), 0.0};
      sc.high = {draw(0.2, 0.8), r_low + draw(0.5, 6.0), draw(0.5, 2.5), 0.0};
      sc.low.rate_bad = 0.3 * sc.low.rate_good;
      sc.high.rate_bad = 0.3 * sc.high.rate_good;
      sc.discount = 1.0;
      sc.alpha = 0.0;
      const Policy best = good_news_policy(sc);
      GoodNewsOptions swapped;
      swapped.initial_explore = other(best.descriptor().initial_explored);
      check_not_dominated(best, good_news_policy(sc, swapped), sc,
                          3000 + 10 * k);
      check_not_dominated(best, fixed_explore(sc, ProjectId::Low), sc,
                          3001 + 10 * k);
    }
  }

  SUBCASE("bad news: perturbed switch thresholds") {
    for (int k = 0; k < 4; ++k) {
      Scenario sc;
      const double r_low = draw(2.0, 8.0);
      sc.low = {draw(0.2, 0.8), r_low, 0.0, draw(0.5, 2.5)};
      sc.high = {draw(0.2, 0.8), r_low + draw(0.5, 6.0), 0.0, draw(0.5, 2.5)};
      sc.low.rate_good = 0.3 * sc.low.rate_bad;
      sc.high.rate_good = 0.3 * sc.high.rate_bad;
      sc.discount = 1.0;
      sc.alpha = 0.0;
      const Policy best = bad_news_policy(sc);
      const double threshold = low_belief_switch_threshold(sc);
      for (const double factor : {0.75, 1.25}) {
        BadNewsOptions opts;
        opts.switch_threshold = std::min(0.999, threshold * factor);
        check_not_dominated(best, bad_news_policy(sc, opts), sc,
                            4000 + 10 * k);
      }
    }
  }
}
