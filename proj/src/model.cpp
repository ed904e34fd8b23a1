#include "forage/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace forage {

namespace {

constexpr double kProbClamp = 1e-15;

int news_sign(const ProjectSpec& p) {
  const double d = p.rate_good - p.rate_bad;
  if (d > 0.0) return 1;
  if (d < 0.0) return -1;
  return 0;
}

}  // namespace

ProjectId other(ProjectId id) {
  return id == ProjectId::Low ? ProjectId::High : ProjectId::Low;
}

void ProjectSpec::validate() const {
  if (!(prior_good > 0.0) || !(prior_good <= 1.0))
    throw std::invalid_argument("ProjectSpec: prior_good must lie in (0,1]");
  if (!(reward > 0.0))
    throw std::invalid_argument("ProjectSpec: reward must be positive");
  if (!(rate_good >= 0.0) || !(rate_bad >= 0.0))
    throw std::invalid_argument("ProjectSpec: arrival rates must be >= 0");
  if (!(std::max(rate_good, rate_bad) > 0.0))
    throw std::invalid_argument(
        "ProjectSpec: at least one arrival rate must be positive");
}

void Scenario::validate() const {
  low.validate();
  high.validate();
  if (!(high.reward > low.reward))
    throw std::invalid_argument("Scenario: high.reward must exceed low.reward");
  if (!(high.prior_good < 1.0))
    throw std::invalid_argument("Scenario: high.prior_good must be below 1");
  if (news_sign(low) != news_sign(high))
    throw std::invalid_argument(
        "Scenario: news regime must have the same sign for both projects");
  if (!(discount > 0.0))
    throw std::invalid_argument("Scenario: discount rate must be positive");
  if (!(alpha >= 0.0) || !(alpha <= 1.0))
    throw std::invalid_argument("Scenario: alpha must lie in [0,1]");
}

NewsRegime classify_regime(const Scenario& scenario) {
  const int s_low = news_sign(scenario.low);
  const int s_high = news_sign(scenario.high);
  if (s_low != s_high)
    throw std::invalid_argument(
        "classify_regime: projects disagree on the sign of rate_good - "
        "rate_bad");
  if (s_low > 0) return NewsRegime::GoodNews;
  if (s_low < 0) return NewsRegime::BadNews;
  return NewsRegime::Balanced;
}

double drift_posterior(double p, double rate_good, double rate_bad,
                       double attention, double t) {
  if (p <= 0.0 || p >= 1.0) return p;
  const double pc = std::clamp(p, kProbClamp, 1.0 - kProbClamp);
  // Log-odds fall at rate (rate_good - rate_bad) * attention absent news.
  const double log_odds = std::log(pc / (1.0 - pc)) +
                          (rate_bad - rate_good) * attention * t;
  return 1.0 / (1.0 + std::exp(-log_odds));
}

std::optional<double> drift_time_to(double p_from, double p_to,
                                    double rate_good, double rate_bad,
                                    double attention) {
  const double slope = (rate_bad - rate_good) * attention;
  if (p_from <= 0.0 || p_from >= 1.0 || p_to <= 0.0 || p_to >= 1.0)
    return std::nullopt;
  const double l_from = std::log(p_from / (1.0 - p_from));
  const double l_to = std::log(p_to / (1.0 - p_to));
  if (l_from == l_to) return 0.0;
  if (slope == 0.0) return std::nullopt;
  const double t = (l_to - l_from) / slope;
  if (t < 0.0) return std::nullopt;
  return t;
}

BeliefState jump_posterior(const BeliefState& state, NewsEvent event) {
  if (state.resolution(event.project) != Resolution::Unknown)
    throw std::invalid_argument(
        "jump_posterior: news on an already-resolved project");
  BeliefState next = state;
  if (event.valence == Valence::Good) {
    next.set_belief(event.project, 1.0);
    next.set_resolution(event.project, Resolution::KnownGood);
  } else {
    next.set_belief(event.project, 0.0);
    next.set_resolution(event.project, Resolution::KnownBad);
  }
  return next;
}

double expected_discount(double r, double lam) {
  if (!(r > 0.0)) throw std::invalid_argument("expected_discount: r must be > 0");
  if (!(lam >= 0.0))
    throw std::invalid_argument("expected_discount: lam must be >= 0");
  if (std::isinf(lam)) return 1.0;
  return lam / (r + lam);
}

double expected_value(const BeliefState& state, const Scenario& scenario,
                      ProjectId id) {
  return state.belief(id) * scenario.project(id).reward;
}

Favored favorable(const BeliefState& state, const Scenario& scenario) {
  const double v_low = expected_value(state, scenario, ProjectId::Low);
  const double v_high = expected_value(state, scenario, ProjectId::High);
  if (v_low > v_high) return Favored::Low;
  if (v_high > v_low) return Favored::High;
  return Favored::Both;
}

BeliefState initial_beliefs(const Scenario& scenario) {
  BeliefState state;
  state.p_low = scenario.low.prior_good;
  state.p_high = scenario.high.prior_good;
  return state;
}

void validate_allocation(const Allocation& alloc, double alpha) {
  constexpr double kTol = 1e-9;
  const double fields[] = {alloc.explore_low, alloc.explore_high,
                           alloc.exploit_low, alloc.exploit_high};
  for (double f : fields)
    if (!(f >= -kTol) || !(f <= 1.0 + kTol))
      throw std::logic_error("Allocation: share outside [0,1]");
  if (std::abs(alloc.explore_low + alloc.explore_high - 1.0) > kTol)
    throw std::logic_error("Allocation: exploration budget must sum to 1");
  if (std::abs(alloc.exploit_low + alloc.exploit_high - 1.0) > kTol)
    throw std::logic_error("Allocation: exploitation budget must sum to 1");
  if (alloc.explore_low + kTol < alpha * alloc.exploit_low ||
      alloc.explore_high + kTol < alpha * alloc.exploit_high)
    throw std::logic_error("Allocation: alpha-constraint violated");
}

}  // namespace forage
