#include "forage/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace forage {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::domain_error(msg);
}

bool pure_regime(NewsRegime regime) {
  return regime == NewsRegime::GoodNews || regime == NewsRegime::BadNews;
}

/// Balanced arrival rate of a project; throws unless rates coincide.
double balanced_rate(const ProjectSpec& p) {
  require(p.rate_good == p.rate_bad,
          "balanced-regime operation on a non-balanced project");
  return p.rate_good;
}

}  // namespace

double odds_ratio(double p) {
  require(p > 0.0 && p <= 1.0, "odds_ratio: p must lie in (0,1]");
  return (1.0 - p) / p;
}

double myopic_cutoff(const Scenario& scenario) {
  require(scenario.safe_low(), "myopic_cutoff: requires a safe low project");
  return scenario.low.reward / scenario.high.reward;
}

double exploitation_cutoff(double alpha, double r, double lam, double R_L,
                           double R_H) {
  require(r > 0.0 && lam > 0.0, "exploitation_cutoff: need r > 0, lam > 0");
  require(R_H > R_L && R_L > 0.0, "exploitation_cutoff: need R_H > R_L > 0");
  require(alpha >= 0.0 && alpha <= 1.0,
          "exploitation_cutoff: alpha outside [0,1]");
  return (r + lam * (1.0 - alpha)) * R_L / ((r + lam) * R_H - lam * alpha * R_L);
}

double deviation_flow_gain(double p, double alpha, double r, double lam,
                           double R_L, double R_H) {
  return -r * (R_L - p * R_H) +
         p * lam * alpha * (r / (r + (1.0 - alpha) * lam)) * (R_H - R_L);
}

double disentangled_payoff(double p, double r, double lam, NewsRegime regime,
                           double R_L, double R_H) {
  require(pure_regime(regime),
          "disentangled_payoff: closed form exists only for pure news");
  require(p >= 0.0 && p <= 1.0, "disentangled_payoff: p outside [0,1]");
  const double pbar0 = R_L / R_H;
  const double rho = lam / (r + lam);
  const double exponent = r / lam;
  if (regime == NewsRegime::GoodNews) {
    if (p <= pbar0) return R_L + p * rho * (R_H - R_L);
    // Above the cutoff: exploit the risky project; the odds-ratio power is
    // the expected discount at the no-news time the cutoff is reached.
    const double z = odds_ratio(p) / odds_ratio(pbar0);
    return p * R_H + (1.0 - p) * std::pow(z, exponent) * rho * R_L;
  }
  if (p >= pbar0) return p * R_H + (1.0 - p) * rho * R_L;
  if (p <= 0.0) return R_L;
  const double z = odds_ratio(pbar0) / odds_ratio(p);
  return R_L + p * std::pow(z, exponent) * rho * (R_H - R_L);
}

double entangled_payoff(double p, double r, double lam, NewsRegime regime,
                        double R_L, double R_H) {
  require(pure_regime(regime),
          "entangled_payoff: closed form exists only for pure news");
  require(p >= 0.0 && p <= 1.0, "entangled_payoff: p outside [0,1]");
  const double pbar1 = exploitation_cutoff(1.0, r, lam, R_L, R_H);
  const double rho = lam / (r + lam);
  if (p <= pbar1) return R_L;
  if (regime == NewsRegime::BadNews) return p * R_H + (1.0 - p) * rho * R_L;
  const double z = odds_ratio(p) / odds_ratio(pbar1);
  return p * R_H +
         ((1.0 - p) / (1.0 - pbar1)) * std::pow(z, r / lam) *
             (R_L - pbar1 * R_H);
}

double balanced_constrained_payoff(double p, double alpha, double r,
                                   double lam, double R_L, double R_H) {
  require(p >= 0.0 && p <= 1.0, "balanced_constrained_payoff: p outside [0,1]");
  const double pbar = exploitation_cutoff(alpha, r, lam, R_L, R_H);
  if (p >= pbar) return p * R_H + (1.0 - p) * (lam / (r + lam)) * R_L;
  const double lam_free = lam * (1.0 - alpha);
  return R_L + p * (lam_free / (r + lam_free)) * (R_H - R_L);
}

SafeCasePayoffs disentanglement_gain(double p, double r_over_lam,
                                     NewsRegime regime, double R_L,
                                     double R_H) {
  require(r_over_lam > 0.0, "disentanglement_gain: r/lam must be positive");
  SafeCasePayoffs out;
  // Payoffs depend on (r, lam) only through the ratio; evaluate at lam = 1.
  out.pi_alpha0 = disentangled_payoff(p, r_over_lam, 1.0, regime, R_L, R_H);
  out.pi_alpha1 = entangled_payoff(p, r_over_lam, 1.0, regime, R_L, R_H);
  out.delta_pi_normalized =
      (out.pi_alpha0 - out.pi_alpha1) / (p * R_H + (1.0 - p) * R_L);
  return out;
}

double disentanglement_gain_argmax(NewsRegime regime, double r_over_lam,
                                   double R_L, double R_H) {
  const auto gain = [&](double p) {
    return disentanglement_gain(p, r_over_lam, regime, R_L, R_H)
        .delta_pi_normalized;
  };
  // Coarse scan (first maximum wins, so ties resolve toward smaller p) ...
  const double step = 1e-4;
  double best_p = step;
  double best_v = gain(best_p);
  for (double p = 2.0 * step; p < 1.0 - 0.5 * step; p += step) {
    const double v = gain(p);
    if (v > best_v) {
      best_v = v;
      best_p = p;
    }
  }
  // ... then golden-section refinement inside the bracketing interval.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::max(best_p - step, step * 0.5);
  double b = std::min(best_p + step, 1.0 - step * 0.5);
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = gain(x1);
  double f2 = gain(x2);
  while (b - a > 1e-12) {
    if (f1 >= f2) {  // ties move the bracket left, toward smaller p
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = gain(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = gain(x2);
    }
  }
  const double mid = 0.5 * (a + b);
  return gain(mid) >= best_v ? mid : best_p;
}

double adjusted_success_probability(ProjectId which, const Scenario& scenario,
                                    const BeliefState& state) {
  const ProjectId y = other(which);
  const double own = expected_value(state, scenario, which);
  const double rival = expected_value(state, scenario, y);
  if (own >= rival) return state.belief(which);
  return std::min(rival / scenario.project(which).reward, 1.0);
}

BalancedIndexReport balanced_index(const Scenario& scenario,
                                   const BeliefState& state) {
  const double lam_low = balanced_rate(scenario.low);
  const double lam_high = balanced_rate(scenario.high);
  BalancedIndexReport out;
  out.adjusted_p_low =
      adjusted_success_probability(ProjectId::Low, scenario, state);
  out.adjusted_p_high =
      adjusted_success_probability(ProjectId::High, scenario, state);
  out.index_low = lam_low * (1.0 - out.adjusted_p_low);
  out.index_high = lam_high * (1.0 - out.adjusted_p_high);
  if (out.index_low > out.index_high)
    out.explored_first = Favored::Low;
  else if (out.index_high > out.index_low)
    out.explored_first = Favored::High;
  else
    out.explored_first = Favored::Both;
  return out;
}

double balanced_sequential_value(const Scenario& scenario,
                                 const BeliefState& state, ProjectId first) {
  const ProjectId x = first;
  const ProjectId y = other(first);
  const double r = scenario.discount;
  const double rho_x = expected_discount(r, balanced_rate(scenario.project(x)));
  const double rho_y = expected_discount(r, balanced_rate(scenario.project(y)));
  const double v_x = expected_value(state, scenario, x);
  const double v_y = expected_value(state, scenario, y);
  const double p_x = state.belief(x);
  const double e0 = std::max(v_x, v_y);
  // Value after x's uncertainty is resolved but y's is not: resolving a
  // favorable x salvages y's expected value when x proves bad; resolving an
  // unfavorable x pays off only when x proves good and beats y.
  const double e_x = v_x >= v_y ? e0 + (1.0 - p_x) * v_y
                                : e0 + p_x * std::max(
                                           scenario.project(x).reward - v_y,
                                           0.0);
  // Value with both projects resolved.
  const double e_star =
      state.p_high * scenario.high.reward +
      (1.0 - state.p_high) * state.p_low * scenario.low.reward;
  return (1.0 - rho_x) * e0 + rho_x * (1.0 - rho_y) * e_x +
         rho_x * rho_y * e_star;
}

namespace {

/// Pairwise exploration preference between two hypothetical balanced
/// projects: a's index strictly exceeds b's.
bool prefers_exploring(const CycleProject& a, const CycleProject& b) {
  const double va = a.prior_good * a.reward;
  const double vb = b.prior_good * b.reward;
  const double pa = va >= vb ? a.prior_good : std::min(vb / a.reward, 1.0);
  const double pb = vb >= va ? b.prior_good : std::min(va / b.reward, 1.0);
  return a.rate * (1.0 - pa) > b.rate * (1.0 - pb);
}

/// Re-verifies one ordered preference through balanced_index on a
/// two-project scenario (the larger reward plays the high role).
bool index_confirms(const CycleProject& a, const CycleProject& b) {
  if (a.reward == b.reward) return false;  // cannot form a valid scenario
  const CycleProject& lo = a.reward < b.reward ? a : b;
  const CycleProject& hi = a.reward < b.reward ? b : a;
  Scenario scenario;
  scenario.low = {lo.prior_good, lo.reward, lo.rate, lo.rate};
  scenario.high = {hi.prior_good, hi.reward, hi.rate, hi.rate};
  scenario.discount = 1.0;
  scenario.alpha = 0.0;
  scenario.validate();
  const BeliefState state = initial_beliefs(scenario);
  const BalancedIndexReport report = balanced_index(scenario, state);
  const bool a_is_low = &lo == &a;
  return report.explored_first == (a_is_low ? Favored::Low : Favored::High);
}

}  // namespace

bool verify_index_cycle(const std::array<CycleProject, 3>& projects) {
  for (int i = 0; i < 3; ++i) {
    const CycleProject& a = projects[i];
    const CycleProject& b = projects[(i + 1) % 3];
    if (!prefers_exploring(a, b)) return false;
    if (!index_confirms(a, b)) return false;
  }
  return true;
}

CycleResult find_index_cycle(const CycleSearchBox& box) {
  CycleResult result;
  if (box.steps < 2) return result;
  std::vector<CycleProject> lattice;
  const auto axis = [&](double lo, double hi, int i) {
    return lo + (hi - lo) * i / (box.steps - 1);
  };
  for (int i = 0; i < box.steps; ++i)
    for (int j = 0; j < box.steps; ++j)
      for (int k = 0; k < box.steps; ++k)
        lattice.push_back({axis(box.prior_min, box.prior_max, i),
                           axis(box.reward_min, box.reward_max, j),
                           axis(box.rate_min, box.rate_max, k)});
  const std::size_t n = lattice.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || !prefers_exploring(lattice[i], lattice[j])) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (!prefers_exploring(lattice[j], lattice[k])) continue;
        if (!prefers_exploring(lattice[k], lattice[i])) continue;
        result.projects = {lattice[i], lattice[j], lattice[k]};
        if (verify_index_cycle(result.projects)) {
          result.found = true;
          return result;
        }
      }
    }
  return result;
}

std::optional<double> indifference_time(const ProjectSpec& x, double p_x,
                                        double other_expected) {
  require(x.rate_good >= x.rate_bad,
          "indifference_time: defined for good-news and balanced projects");
  require(p_x > 0.0 && p_x < 1.0, "indifference_time: p_x must lie in (0,1)");
  const double own = p_x * x.reward;
  if (own <= other_expected) return 0.0;
  const double drift = x.rate_good - x.rate_bad;
  if (drift == 0.0) return std::nullopt;  // balanced: beliefs never move
  if (other_expected <= 0.0) return std::nullopt;
  return std::log(p_x * (x.reward - other_expected) /
                  (other_expected * (1.0 - p_x))) /
         drift;
}

std::optional<double> exploration_switch_root(const ProjectSpec& x,
                                              const ProjectSpec& y) {
  // D(p) = rate_bad_x (1-p) - rate_good_y (1 - p R_x/R_y), linear in p.
  const double slope = y.rate_good * x.reward / y.reward - x.rate_bad;
  if (slope == 0.0)
    throw std::domain_error(
        "exploration_switch_root: degenerate case rate_bad_x R_y == "
        "rate_good_y R_x");
  const double root = (y.rate_good - x.rate_bad) / slope;
  if (root > 0.0 && root < 1.0) return root;
  return std::nullopt;
}

bool explore_high_first(const Scenario& scenario, const BeliefState& state) {
  require(scenario.low.rate_bad == 0.0 && scenario.high.rate_bad == 0.0,
          "explore_high_first: requires pure good news");
  const double v_low = expected_value(state, scenario, ProjectId::Low);
  const double v_high = expected_value(state, scenario, ProjectId::High);
  require(v_low <= v_high && v_high < scenario.low.reward,
          "explore_high_first: requires p_L R_L <= p_H R_H < R_L");
  const double r = scenario.discount;
  const double lam_L = scenario.low.rate_good;
  const double lam_H = scenario.high.rate_good;
  const std::optional<double> tbar =
      indifference_time(scenario.high, state.p_high, v_low);
  const double w = tbar ? std::exp(-r * *tbar) : 0.0;
  const double rho_L = expected_discount(r, lam_L);
  const double adj_p_low = std::min(v_high / scenario.low.reward, 1.0);
  const double lhs = lam_H * ((w - rho_L) / (1.0 - rho_L)) * (1.0 - state.p_high);
  const double rhs = lam_L * (1.0 - adj_p_low);
  return lhs >= rhs;
}

double low_belief_switch_threshold(const Scenario& scenario) {
  require(classify_regime(scenario) == NewsRegime::BadNews,
          "low_belief_switch_threshold: requires a bad-news scenario");
  const double g_H = scenario.high.rate_good;
  const double b_L = scenario.low.rate_bad;
  // The indifference gap b_L (1 - p) - g_H (1 - p R_L / R_H) is linear in p
  // and strictly negative at p = 1 whenever g_H > 0, so an interior root
  // exists exactly when b_L > g_H > 0; otherwise one project's news rate
  // dominates at every belief.
  if (g_H == 0.0) return 1.0;
  if (g_H >= b_L) return 0.0;
  const double ratio = scenario.low.reward / scenario.high.reward;
  return (b_L - g_H) / (b_L - g_H * ratio);
}

double gittins_index(double p, double R, double lam, double r) {
  return p * R * (r + lam) / (r + p * lam);
}

}  // namespace forage
