#include "forage/dp_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace forage {

namespace {

constexpr double kConvergenceTol = 1e-10;
constexpr int kMaxSweeps = 20000;
constexpr double kStepProbBound = 0.1;

void check_step(double delta, double r, double rate_max) {
  if (!(delta > 0.0))
    throw std::invalid_argument("value iteration: delta must be positive");
  if (delta * r >= kStepProbBound || delta * rate_max >= kStepProbBound)
    throw std::invalid_argument(
        "value iteration: per-step event probabilities exceed 0.1; shrink "
        "delta");
}

std::vector<double> uniform_axis(int n) {
  if (n < 2) throw std::invalid_argument("value iteration: grid_n must be >= 2");
  std::vector<double> axis(n + 1);
  for (int i = 0; i <= n; ++i) axis[i] = static_cast<double>(i) / n;
  return axis;
}

/// Discounted exposure to one step: E[min over the step of the discounted
/// event clock], (1 - e^{-(r+m) delta}) / (r + m).
double exposure(double r, double m, double delta) {
  return (1.0 - std::exp(-(r + m) * delta)) / (r + m);
}

/// One-step data for a fixed action at a fixed node: value candidate is
/// (K + C * interp(v at drift target)) with the self node's interpolation
/// weight folded in implicitly.
struct StepTerms {
  double K = 0.0;        // flow + absorbing contributions
  double C = 0.0;        // weight on the continuation value at the target
  int lo = 0;            // lower interpolation node along the drifted axis
  double w_hi = 0.0;     // weight of node lo+1
};

/// Assembles one-step terms conditional on the explored project's truth.
/// p: belief the explored project is good; flows/absorbing values are
/// already conditioned on that truth.
StepTerms make_step(const std::vector<double>& axis, double p,
                    double rate_good, double rate_bad, double attention,
                    double r, double delta, double flow_good, double flow_bad,
                    double absorb_good, double absorb_bad) {
  const double g = attention * rate_good;
  const double b = attention * rate_bad;
  const double eg = exposure(r, g, delta);
  const double eb = exposure(r, b, delta);
  StepTerms t;
  t.K = p * (r * flow_good * eg + g * eg * absorb_good) +
        (1.0 - p) * (r * flow_bad * eb + b * eb * absorb_bad);
  t.C = p * std::exp(-(r + g) * delta) + (1.0 - p) * std::exp(-(r + b) * delta);
  // Exact no-news posterior after the step.
  const double num = p * std::exp(-g * delta);
  const double den = num + (1.0 - p) * std::exp(-b * delta);
  const double p_next = den > 0.0 ? std::clamp(num / den, 0.0, 1.0) : p;
  const int n = static_cast<int>(axis.size()) - 1;
  const double s = p_next * n;
  t.lo = std::clamp(static_cast<int>(s), 0, n - 1);
  t.w_hi = std::clamp(s - t.lo, 0.0, 1.0);
  return t;
}

/// Candidate value at node `self` given current values, solving the
/// implicit self-reference v = K + C * ((1-w) v[lo] + w v[lo+1]).
double solve_candidate(const StepTerms& t, const std::vector<double>& v,
                       int self) {
  const double w_lo = 1.0 - t.w_hi;
  double other = 0.0;
  double w_self = 0.0;
  if (t.lo == self)
    w_self = w_lo;
  else
    other += w_lo * v[t.lo];
  if (t.lo + 1 == self)
    w_self = t.w_hi;
  else
    other += t.w_hi * v[t.lo + 1];
  return (t.K + t.C * other) / (1.0 - t.C * w_self);
}

/// Sweep order along one axis: ascending when no-news drift lowers the
/// belief (good news), descending when it raises it, so drift targets are
/// visited before the nodes that depend on them.
std::vector<int> sweep_order(int n, NewsRegime regime) {
  std::vector<int> order(n + 1);
  for (int i = 0; i <= n; ++i)
    order[i] = regime == NewsRegime::BadNews ? n - i : i;
  return order;
}

}  // namespace

double default_delta(const Scenario& scenario) {
  const double rate_max =
      std::max({scenario.low.rate_good, scenario.low.rate_bad,
                scenario.high.rate_good, scenario.high.rate_bad});
  return 1e-3 / std::max(scenario.discount, rate_max);
}

SafeValueGrid value_iteration_safe(const Scenario& scenario, double delta,
                                   int grid_n) {
  if (!scenario.safe_low())
    throw std::invalid_argument(
        "value_iteration_safe: requires a safe low project");
  const double r = scenario.discount;
  const double alpha = scenario.alpha;
  const ProjectSpec& risky = scenario.high;
  const double R_L = scenario.low.reward;
  const double R_H = risky.reward;
  check_step(delta, r, std::max(risky.rate_good, risky.rate_bad));
  const NewsRegime regime = risky.rate_good > risky.rate_bad
                                ? NewsRegime::GoodNews
                                : (risky.rate_bad > risky.rate_good
                                       ? NewsRegime::BadNews
                                       : NewsRegime::Balanced);

  SafeValueGrid grid;
  grid.spec = {grid_n, delta};
  grid.p = uniform_axis(grid_n);
  grid.value.assign(grid.p.size(), 0.0);
  grid.action.assign(grid.p.size(), 0);

  // Action 0: exploit safe (explore risky at 1 - alpha).
  // Action 1: exploit risky (explore it fully).
  std::vector<StepTerms> steps[2];
  for (std::size_t i = 0; i < grid.p.size(); ++i) {
    const double p = grid.p[i];
    steps[0].push_back(make_step(grid.p, p, risky.rate_good, risky.rate_bad,
                                 1.0 - alpha, r, delta, R_L, R_L, R_H, R_L));
    steps[1].push_back(make_step(grid.p, p, risky.rate_good, risky.rate_bad,
                                 1.0, r, delta, R_H, 0.0, R_H, R_L));
  }

  const std::vector<int> order = sweep_order(grid_n, regime);
  for (int sweep = 1; sweep <= kMaxSweeps; ++sweep) {
    double sup_change = 0.0;
    for (int i : order) {
      const double v0 = solve_candidate(steps[0][i], grid.value, i);
      const double v1 = solve_candidate(steps[1][i], grid.value, i);
      const double best = v1 >= v0 ? v1 : v0;  // ties exploit the risky arm
      sup_change = std::max(sup_change, std::abs(best - grid.value[i]));
      grid.value[i] = best;
      grid.action[i] = v1 >= v0 ? 1 : 0;
    }
    grid.iterations = sweep;
    grid.sup_change = sup_change;
    if (sup_change < kConvergenceTol) return grid;
  }
  throw std::runtime_error("value_iteration_safe: no convergence");
}

TwoRiskyGrid value_iteration_two_risky(const Scenario& scenario, double delta,
                                       int grid_n) {
  if (scenario.alpha != 0.0)
    throw std::invalid_argument(
        "value_iteration_two_risky: requires alpha = 0");
  const double r = scenario.discount;
  const double R_L = scenario.low.reward;
  const double R_H = scenario.high.reward;
  check_step(delta, r,
             std::max({scenario.low.rate_good, scenario.low.rate_bad,
                       scenario.high.rate_good, scenario.high.rate_bad}));
  const NewsRegime regime = classify_regime(scenario);

  // Values after conclusive good news on the low project: the remaining
  // problem has a safe low arm, solved on the same belief axis.
  Scenario after_low_good = scenario;
  after_low_good.low.prior_good = 1.0;
  const SafeValueGrid safe =
      value_iteration_safe(after_low_good, delta, grid_n);

  TwoRiskyGrid grid;
  grid.spec = {grid_n, delta};
  grid.p_low = uniform_axis(grid_n);
  grid.p_high = uniform_axis(grid_n);
  const std::size_t n_nodes = grid.p_low.size() * grid.p_high.size();
  grid.value.assign(n_nodes, 0.0);
  grid.action.assign(n_nodes, 0);

  // Per-node one-step terms for the four (explored, exploited) pairs.
  // Exploring High drifts the p_high coordinate; exploring Low the p_low
  // coordinate; the other belief is frozen within the step.
  std::vector<StepTerms> steps[4];
  for (auto& s : steps) s.resize(n_nodes);
  for (std::size_t i = 0; i < grid.p_low.size(); ++i) {
    const double pl = grid.p_low[i];
    for (std::size_t j = 0; j < grid.p_high.size(); ++j) {
      const double ph = grid.p_high[j];
      const std::size_t node = grid.at(static_cast<int>(i), static_cast<int>(j));
      const double ev_low = pl * R_L;
      const double ev_high = ph * R_H;
      // After news on Low: good -> safe-low continuation at p_high;
      // bad -> only High matters, perpetual exploitation worth p_H R_H.
      const double low_good = safe.value[j];
      const double low_bad = ph * R_H;
      // After news on High: good -> exploit High forever; bad -> exploit
      // Low forever, worth p_L R_L.
      const double high_good = R_H;
      const double high_bad = pl * R_L;
      // explore Low, exploit Low
      steps[0][node] = make_step(grid.p_low, pl, scenario.low.rate_good,
                                 scenario.low.rate_bad, 1.0, r, delta, R_L,
                                 0.0, low_good, low_bad);
      // explore Low, exploit High
      steps[1][node] = make_step(grid.p_low, pl, scenario.low.rate_good,
                                 scenario.low.rate_bad, 1.0, r, delta,
                                 ev_high, ev_high, low_good, low_bad);
      // explore High, exploit Low
      steps[2][node] = make_step(grid.p_high, ph, scenario.high.rate_good,
                                 scenario.high.rate_bad, 1.0, r, delta,
                                 ev_low, ev_low, high_good, high_bad);
      // explore High, exploit High
      steps[3][node] = make_step(grid.p_high, ph, scenario.high.rate_good,
                                 scenario.high.rate_bad, 1.0, r, delta, R_H,
                                 0.0, high_good, high_bad);
    }
  }

  // Interpolates along one belief axis with the self node's weight folded
  // in implicitly, reading only the two stencil nodes.
  const auto candidate_at = [&grid](const StepTerms& t, int self,
                                    std::size_t stencil_lo,
                                    std::size_t stencil_stride) {
    const double w_lo = 1.0 - t.w_hi;
    double other = 0.0;
    double w_self = 0.0;
    if (t.lo == self)
      w_self = w_lo;
    else
      other += w_lo * grid.value[stencil_lo];
    if (t.lo + 1 == self)
      w_self = t.w_hi;
    else
      other += t.w_hi * grid.value[stencil_lo + stencil_stride];
    return (t.K + t.C * other) / (1.0 - t.C * w_self);
  };

  const std::vector<int> order = sweep_order(grid_n, regime);
  const std::size_t stride_low = grid.p_high.size();
  for (int sweep = 1; sweep <= kMaxSweeps; ++sweep) {
    double sup_change = 0.0;
    for (int i : order) {
      for (int j : order) {
        const std::size_t node = grid.at(i, j);
        double best = -1.0;
        std::uint8_t best_action = 0;
        for (std::uint8_t a = 0; a < 4; ++a) {
          const StepTerms& t = steps[a][node];
          const double candidate =
              a < 2 ? candidate_at(t, i, grid.at(t.lo, j), stride_low)
                    : candidate_at(t, j, grid.at(i, t.lo), 1);
          if (candidate >= best) {  // ties prefer exploring/exploiting High
            best = candidate;
            best_action = a;
          }
        }
        sup_change = std::max(sup_change, std::abs(best - grid.value[node]));
        grid.value[node] = best;
        grid.action[node] = best_action;
      }
    }
    grid.iterations = sweep;
    grid.sup_change = sup_change;
    if (sup_change < kConvergenceTol) return grid;
  }
  throw std::runtime_error("value_iteration_two_risky: no convergence");
}

double extract_threshold(const std::vector<double>& axis,
                         const std::vector<int>& flags) {
  if (axis.size() != flags.size() || axis.size() < 2)
    throw std::invalid_argument("extract_threshold: mismatched inputs");
  int crossing = -1;
  for (std::size_t i = 1; i < flags.size(); ++i) {
    if (flags[i] == flags[i - 1]) continue;
    if (crossing >= 0)
      throw std::runtime_error(
          "extract_threshold: policy map is not monotone along the axis");
    crossing = static_cast<int>(i);
  }
  if (crossing < 0)
    throw std::runtime_error("extract_threshold: policy map is constant");
  return 0.5 * (axis[crossing - 1] + axis[crossing]);
}

double exploitation_threshold(const SafeValueGrid& grid) {
  return extract_threshold(grid.p, grid.action);
}

}  // namespace forage
