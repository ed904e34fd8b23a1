#include "forage/policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "forage/closedform.hpp"
#include "forage/dp_oracle.hpp"

namespace forage {

namespace {

/// Minimum scheduled-step duration; nudges the clock past exact-tie
/// instants so walkers and simulators always make progress.
constexpr double kMinStep = 1e-12;

ProjectId exploit_choice(const BeliefState& state, const Scenario& scenario) {
  // Ties resolve to High (deterministic, payoff-irrelevant).
  return favorable(state, scenario) == Favored::Low ? ProjectId::Low
                                                    : ProjectId::High;
}

Allocation bang(ProjectId explored, ProjectId exploited) {
  Allocation a;
  (explored == ProjectId::Low ? a.explore_low : a.explore_high) = 1.0;
  (exploited == ProjectId::Low ? a.exploit_low : a.exploit_high) = 1.0;
  return a;
}

int unresolved_count(const BeliefState& s) {
  return (s.resolved_low == Resolution::Unknown ? 1 : 0) +
         (s.resolved_high == Resolution::Unknown ? 1 : 0);
}

ProjectId sole_unresolved(const BeliefState& s) {
  return s.resolved_low == Resolution::Unknown ? ProjectId::Low
                                               : ProjectId::High;
}

std::optional<double> min_candidate(std::optional<double> a,
                                    std::optional<double> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

std::optional<double> floor_step(std::optional<double> t) {
  if (!t) return std::nullopt;
  return std::max(*t, kMinStep);
}

/// Drift time until the explored project's expected value meets the other
/// side's (fixed) expected value, under full exploration attention.
std::optional<double> value_crossing(const ProjectSpec& spec, double p,
                                     double rival_value) {
  const double target = rival_value / spec.reward;
  if (target <= 0.0 || target >= 1.0) return std::nullopt;
  return drift_time_to(p, target, spec.rate_good, spec.rate_bad, 1.0);
}

ProjectId argmax_explore(const Allocation& a) {
  return a.explore_low > a.explore_high ? ProjectId::Low : ProjectId::High;
}

ProjectId argmax_exploit(const Allocation& a) {
  return a.exploit_low > a.exploit_high ? ProjectId::Low : ProjectId::High;
}

// ---------------------------------------------------------------------------
// Safe-low case.

class SafePolicyImpl : public PolicyBase {
 public:
  SafePolicyImpl(Scenario scenario, double cutoff)
      : sc_(std::move(scenario)), cutoff_(cutoff) {}

  Allocation decide(const BeliefState& state, double) const override {
    if (state.resolved_high == Resolution::KnownGood)
      return bang(ProjectId::High, ProjectId::High);
    if (state.resolved_high == Resolution::KnownBad)
      return bang(ProjectId::Low, ProjectId::Low);
    if (state.p_high >= cutoff_) return bang(ProjectId::High, ProjectId::High);
    Allocation a;
    a.exploit_low = 1.0;
    a.explore_low = sc_.alpha;
    a.explore_high = 1.0 - sc_.alpha;
    return a;
  }

  std::optional<double> next_change(const BeliefState& state,
                                    double) const override {
    if (state.resolved_high != Resolution::Unknown) return std::nullopt;
    const double g = sc_.high.rate_good;
    const double b = sc_.high.rate_bad;
    const double p = state.p_high;
    if (p >= cutoff_) {
      // Exploiting the risky project at full attention; only a downward
      // (good-news) drift can cross the cutoff.
      if (g <= b) return std::nullopt;
      return floor_step(drift_time_to(p, cutoff_, g, b, 1.0));
    }
    // Exploiting safe at attention 1 - alpha on the risky project; only
    // an upward (bad-news) drift can cross the cutoff.
    if (b <= g) return std::nullopt;
    return floor_step(drift_time_to(p, cutoff_, g, b, 1.0 - sc_.alpha));
  }

 private:
  Scenario sc_;
  double cutoff_;
};

// ---------------------------------------------------------------------------
// Balanced news, alpha = 0.

class BalancedPolicyImpl : public PolicyBase {
 public:
  explicit BalancedPolicyImpl(Scenario scenario) : sc_(std::move(scenario)) {}

  Allocation decide(const BeliefState& state, double) const override {
    const ProjectId exploited = exploit_choice(state, sc_);
    ProjectId explored;
    switch (unresolved_count(state)) {
      case 2: {
        const BalancedIndexReport report = balanced_index(sc_, state);
        explored = report.explored_first == Favored::Low ? ProjectId::Low
                                                         : ProjectId::High;
        break;
      }
      case 1:
        explored = sole_unresolved(state);
        break;
      default:
        explored = exploited;
    }
    return bang(explored, exploited);
  }

  std::optional<double> next_change(const BeliefState&,
                                    double) const override {
    return std::nullopt;  // beliefs never drift under balanced news
  }

 private:
  Scenario sc_;
};

// ---------------------------------------------------------------------------
// Good news, alpha = 0.

class GoodNewsPolicyImpl : public PolicyBase {
 public:
  GoodNewsPolicyImpl(Scenario scenario, ProjectId initial,
                     std::optional<double> switch_belief)
      : sc_(std::move(scenario)),
        initial_(initial),
        switch_belief_(switch_belief) {}

  Allocation decide(const BeliefState& state, double) const override {
    const ProjectId exploited = exploit_choice(state, sc_);
    ProjectId explored;
    switch (unresolved_count(state)) {
      case 2:
        explored = initial_;
        if (switch_belief_ && state.belief(initial_) <= *switch_belief_)
          explored = other(initial_);
        break;
      case 1:
        explored = sole_unresolved(state);
        break;
      default:
        explored = exploited;
    }
    return bang(explored, exploited);
  }

  std::optional<double> next_change(const BeliefState& state,
                                    double) const override {
    std::optional<double> next;
    if (unresolved_count(state) == 2) {
      const ProjectId e = argmax_explore(decide(state, 0.0));
      const ProjectSpec& spec = sc_.project(e);
      if (e == initial_ && switch_belief_)
        next = drift_time_to(state.belief(e), *switch_belief_, spec.rate_good,
                             spec.rate_bad, 1.0);
      const double rival = expected_value(state, sc_, other(e));
      if (expected_value(state, sc_, e) >= rival)
        next = min_candidate(next,
                             value_crossing(spec, state.belief(e), rival));
    } else if (unresolved_count(state) == 1) {
      const ProjectId u = sole_unresolved(state);
      const double rival = expected_value(state, sc_, other(u));
      if (expected_value(state, sc_, u) >= rival)
        next = value_crossing(sc_.project(u), state.belief(u), rival);
    }
    return floor_step(next);
  }

 private:
  Scenario sc_;
  ProjectId initial_;
  std::optional<double> switch_belief_;
};

// ---------------------------------------------------------------------------
// Bad news, alpha = 0.

class BadNewsPolicyImpl : public PolicyBase {
 public:
  BadNewsPolicyImpl(Scenario scenario, double switch_threshold)
      : sc_(std::move(scenario)), threshold_(switch_threshold) {}

  Allocation decide(const BeliefState& state, double) const override {
    const ProjectId exploited = exploit_choice(state, sc_);
    ProjectId explored;
    switch (unresolved_count(state)) {
      case 2: {
        const bool low_first =
            state.p_low < threshold_ &&
            state.p_high * sc_.high.reward < sc_.low.reward;
        explored = low_first ? ProjectId::Low : ProjectId::High;
        break;
      }
      case 1:
        explored = sole_unresolved(state);
        break;
      default:
        explored = exploited;
    }
    return bang(explored, exploited);
  }

  std::optional<double> next_change(const BeliefState& state,
                                    double) const override {
    std::optional<double> next;
    if (unresolved_count(state) == 2) {
      const ProjectId e = argmax_explore(decide(state, 0.0));
      const ProjectSpec& spec = sc_.project(e);
      if (e == ProjectId::Low)
        next = drift_time_to(state.p_low, threshold_, spec.rate_good,
                             spec.rate_bad, 1.0);
      const double rival = expected_value(state, sc_, other(e));
      if (expected_value(state, sc_, e) <= rival)
        next = min_candidate(next,
                             value_crossing(spec, state.belief(e), rival));
    } else if (unresolved_count(state) == 1) {
      const ProjectId u = sole_unresolved(state);
      const double rival = expected_value(state, sc_, other(u));
      if (expected_value(state, sc_, u) <= rival)
        next = value_crossing(sc_.project(u), state.belief(u), rival);
    }
    return floor_step(next);
  }

 private:
  Scenario sc_;
  double threshold_;
};

// ---------------------------------------------------------------------------
// Classical fully entangled baseline.

class ClassicalPolicyImpl : public PolicyBase {
 public:
  explicit ClassicalPolicyImpl(Scenario scenario)
      : sc_(std::move(scenario)), regime_(classify_regime(sc_)) {}

  Allocation decide(const BeliefState& state, double) const override {
    const double i_low = index(ProjectId::Low, state);
    const double i_high = index(ProjectId::High, state);
    const double tol = 1e-9 * (1.0 + std::max(i_low, i_high));
    if (i_high > i_low + tol) return bang(ProjectId::High, ProjectId::High);
    if (i_low > i_high + tol) return bang(ProjectId::Low, ProjectId::Low);
    if (regime_ == NewsRegime::GoodNews) {
      // Tied indices under good news: split attention so both indices
      // decay in lockstep (each side's share is inversely proportional
      // to its own decay speed).
      const double c_low = decay_speed(ProjectId::Low, state);
      const double c_high = decay_speed(ProjectId::High, state);
      if (c_low + c_high > 0.0) {
        Allocation a;
        a.explore_low = a.exploit_low = c_high / (c_low + c_high);
        a.explore_high = a.exploit_high = 1.0 - a.explore_low;
        return a;
      }
    }
    return bang(ProjectId::High, ProjectId::High);
  }

  std::optional<double> next_change(const BeliefState& state,
                                    double) const override {
    if (regime_ != NewsRegime::GoodNews) return std::nullopt;
    const Allocation a = decide(state, 0.0);
    const bool split = a.explore_low > 0.0 && a.explore_high > 0.0;
    if (split) {
      // Both shares vary continuously along the tie; advance in small
      // steps and re-balance.
      const double scale =
          std::max({sc_.discount, sc_.low.rate_good, sc_.high.rate_good});
      return 0.01 / scale;
    }
    const ProjectId z = argmax_explore(a);
    if (state.resolution(z) != Resolution::Unknown) return std::nullopt;
    const ProjectSpec& spec = sc_.project(z);
    const double rival = index(other(z), state);
    if (rival <= 0.0 || rival >= index(z, state)) return std::nullopt;
    const double lam = std::max(spec.rate_good, spec.rate_bad);
    const double r = sc_.discount;
    // Belief at which this project's index falls to the rival index.
    const double p_tie =
        rival * r / (spec.reward * (r + lam) - rival * lam);
    return floor_step(
        drift_time_to(state.belief(z), p_tie, spec.rate_good, spec.rate_bad,
                      1.0));
  }

 private:
  double index(ProjectId z, const BeliefState& state) const {
    const ProjectSpec& spec = sc_.project(z);
    if (state.resolution(z) == Resolution::KnownGood) return spec.reward;
    if (state.resolution(z) == Resolution::KnownBad) return 0.0;
    return gittins_index(state.belief(z), spec.reward,
                         std::max(spec.rate_good, spec.rate_bad),
                         sc_.discount);
  }

  /// Index decay rate per unit of exploration attention.
  double decay_speed(ProjectId z, const BeliefState& state) const {
    if (state.resolution(z) != Resolution::Unknown) return 0.0;
    const ProjectSpec& spec = sc_.project(z);
    const double lam = std::max(spec.rate_good, spec.rate_bad);
    const double r = sc_.discount;
    const double p = state.belief(z);
    const double slope =
        spec.reward * (r + lam) * r / ((r + p * lam) * (r + p * lam));
    return slope * (spec.rate_good - spec.rate_bad) * p * (1.0 - p);
  }

  Scenario sc_;
  NewsRegime regime_;
};

// ---------------------------------------------------------------------------
// Descriptor construction: walk the no-news trajectory and record the
// bang-bang allocation changes.

PolicyDescriptor describe(const Policy& policy, const Scenario& scenario,
                          std::string name, std::optional<double> cutoff) {
  PolicyDescriptor desc;
  desc.name = std::move(name);
  desc.exploit_cutoff = cutoff;
  const std::vector<TimelinePoint> timeline =
      no_news_timeline(policy, scenario, 1000.0 / scenario.discount, 128);
  desc.initial_explored = argmax_explore(timeline.front().alloc);
  desc.initial_exploited = argmax_exploit(timeline.front().alloc);
  for (std::size_t i = 1; i < timeline.size(); ++i) {
    const TimelinePoint& prev = timeline[i - 1];
    const TimelinePoint& cur = timeline[i];
    if (!desc.explore_switch_time &&
        argmax_explore(cur.alloc) != argmax_explore(prev.alloc))
      desc.explore_switch_time = cur.t;
    if (argmax_exploit(cur.alloc) != argmax_exploit(prev.alloc))
      desc.exploit_switch_times.push_back(cur.t);
  }
  return desc;
}

void require_regime(const Scenario& scenario, NewsRegime expected,
                    const char* who) {
  if (classify_regime(scenario) != expected)
    throw std::domain_error(std::string(who) +
                            ": scenario is in the wrong news regime");
}

void require_disentangled(const Scenario& scenario, const char* who) {
  if (scenario.alpha != 0.0)
    throw std::domain_error(std::string(who) +
                            ": two-risky rule requires alpha = 0");
}

}  // namespace

Policy safe_project_policy(const Scenario& scenario, SafeOptions options) {
  if (!scenario.safe_low())
    throw std::domain_error("safe_project_policy: requires a safe low project");
  const double lam =
      std::max(scenario.high.rate_good, scenario.high.rate_bad);
  const double cutoff = options.cutoff.value_or(
      exploitation_cutoff(scenario.alpha, scenario.discount, lam,
                          scenario.low.reward, scenario.high.reward));
  Policy policy(std::make_shared<SafePolicyImpl>(scenario, cutoff), {});
  return Policy(std::make_shared<SafePolicyImpl>(scenario, cutoff),
                describe(policy, scenario, "safe-cutoff", cutoff));
}

Policy balanced_policy(const Scenario& scenario) {
  require_regime(scenario, NewsRegime::Balanced, "balanced_policy");
  require_disentangled(scenario, "balanced_policy");
  Policy policy(std::make_shared<BalancedPolicyImpl>(scenario), {});
  return Policy(std::make_shared<BalancedPolicyImpl>(scenario),
                describe(policy, scenario, "balanced-index", std::nullopt));
}

Policy good_news_policy(const Scenario& scenario, GoodNewsOptions options) {
  require_regime(scenario, NewsRegime::GoodNews, "good_news_policy");
  require_disentangled(scenario, "good_news_policy");
  const BeliefState state0 = initial_beliefs(scenario);
  const double v_low = expected_value(state0, scenario, ProjectId::Low);
  const double v_high = expected_value(state0, scenario, ProjectId::High);

  ProjectId initial;
  if (options.initial_explore) {
    initial = *options.initial_explore;
  } else if (scenario.low.rate_bad == 0.0 && scenario.high.rate_bad == 0.0 &&
             v_low <= v_high && v_high < scenario.low.reward) {
    initial = explore_high_first(scenario, state0) ? ProjectId::High
                                                   : ProjectId::Low;
  } else {
    // Outside the closed-form region the initial choice is read off the
    // value-iteration oracle at the prior beliefs.
    const TwoRiskyGrid grid = value_iteration_two_risky(
        scenario, default_delta(scenario), options.oracle_grid);
    const int i = static_cast<int>(
        std::lround(state0.p_low * (grid.p_low.size() - 1)));
    const int j = static_cast<int>(
        std::lround(state0.p_high * (grid.p_high.size() - 1)));
    initial = grid.explored(i, j);
  }

  // Interior exploration switch: only off the favorable project, at the
  // belief where the first-order switching gain crosses zero, and only
  // when that belief is reached while the project is still favorable.
  std::optional<double> switch_belief;
  const ProjectId y = other(initial);
  const double v_init = initial == ProjectId::Low ? v_low : v_high;
  const double v_other = initial == ProjectId::Low ? v_high : v_low;
  const ProjectSpec& spec_x = scenario.project(initial);
  const ProjectSpec& spec_y = scenario.project(y);
  if (v_init >= v_other && spec_x.rate_bad > 0.0) {
    const double slope =
        spec_y.rate_good * spec_x.reward / spec_y.reward - spec_x.rate_bad;
    if (slope != 0.0) {
      const std::optional<double> root =
          exploration_switch_root(spec_x, spec_y);
      const double p_indifferent = v_other / spec_x.reward;
      if (slope > 0.0 && root && *root < state0.belief(initial) &&
          *root >= p_indifferent)
        switch_belief = *root;
    }
  }

  Policy policy(
      std::make_shared<GoodNewsPolicyImpl>(scenario, initial, switch_belief),
      {});
  return Policy(
      std::make_shared<GoodNewsPolicyImpl>(scenario, initial, switch_belief),
      describe(policy, scenario, "good-news", std::nullopt));
}

Policy bad_news_policy(const Scenario& scenario, BadNewsOptions options) {
  require_regime(scenario, NewsRegime::BadNews, "bad_news_policy");
  require_disentangled(scenario, "bad_news_policy");
  const double threshold = options.switch_threshold.value_or(
      low_belief_switch_threshold(scenario));
  Policy policy(std::make_shared<BadNewsPolicyImpl>(scenario, threshold), {});
  return Policy(std::make_shared<BadNewsPolicyImpl>(scenario, threshold),
                describe(policy, scenario, "bad-news", std::nullopt));
}

Policy classical_policy(const Scenario& scenario) {
  if (scenario.alpha != 1.0)
    throw std::domain_error("classical_policy: requires alpha = 1");
  const BeliefState state0 = initial_beliefs(scenario);
  auto impl = std::make_shared<ClassicalPolicyImpl>(scenario);
  PolicyDescriptor desc;
  desc.name = "classical-index";
  const Allocation a0 = impl->decide(state0, 0.0);
  desc.initial_explored = argmax_explore(a0);
  desc.initial_exploited = argmax_exploit(a0);
  return Policy(std::move(impl), std::move(desc));
}

Policy optimal_policy(const Scenario& scenario) {
  if (scenario.safe_low()) return safe_project_policy(scenario);
  if (scenario.alpha != 0.0)
    throw std::domain_error(
        "optimal_policy: two-risky optimum known only at alpha = 0");
  switch (classify_regime(scenario)) {
    case NewsRegime::Balanced:
      return balanced_policy(scenario);
    case NewsRegime::GoodNews:
      return good_news_policy(scenario);
    default:
      return bad_news_policy(scenario);
  }
}

std::vector<TimelinePoint> no_news_timeline(const Policy& policy,
                                            const Scenario& scenario,
                                            double horizon, int max_points) {
  std::vector<TimelinePoint> out;
  BeliefState state = initial_beliefs(scenario);
  double clock = 0.0;
  Allocation alloc = policy.decide(state, clock);
  out.push_back({clock, state, alloc});
  while (static_cast<int>(out.size()) < max_points) {
    const std::optional<double> step = policy.next_change(state, clock);
    if (!step) break;
    const double dt = std::min(*step, horizon - clock);
    if (dt <= 0.0) break;
    for (ProjectId z : {ProjectId::Low, ProjectId::High}) {
      const ProjectSpec& spec = scenario.project(z);
      state.set_belief(z, drift_posterior(state.belief(z), spec.rate_good,
                                          spec.rate_bad, alloc.explore(z),
                                          dt));
    }
    clock += dt;
    if (clock >= horizon) break;
    alloc = policy.decide(state, clock);
    out.push_back({clock, state, alloc});
  }
  return out;
}

}  // namespace forage
