#pragma once

#include <array>
#include <optional>

#include "forage/model.hpp"

// Closed-form quantities for the one-safe-project case (exploitation
// cutoffs, payoff formulas, the value of disentanglement) and for the
// two-risky-project case (information indices, indifference times, switch
// points, and the intransitive-preference triple showing that optimal
// exploration admits no separable index).

namespace forage {

/// Payoffs of the fully disentangled and fully entangled safe-case
/// problems, plus their difference normalized by the full-information
/// value p*R_H + (1-p)*R_L.
struct SafeCasePayoffs {
  double pi_alpha0 = 0.0;
  double pi_alpha1 = 0.0;
  double delta_pi_normalized = 0.0;
};

/// Odds ratio (1-p)/p.
double odds_ratio(double p);

/// Exploration ranking of two risky projects under balanced news.
struct BalancedIndexReport {
  double index_low = 0.0;
  double index_high = 0.0;
  double adjusted_p_low = 0.0;
  double adjusted_p_high = 0.0;
  Favored explored_first = Favored::Both;  // Both == either is optimal
};

/// Myopic exploitation cutoff R_L / R_H. Requires a safe low project.
double myopic_cutoff(const Scenario& scenario);

/// Optimal exploitation cutoff for the risky project in the safe-low
/// case: (r + lam(1-alpha)) R_L / ((r + lam) R_H - lam alpha R_L), with
/// lam the larger of the risky project's two arrival rates.
double exploitation_cutoff(double alpha, double r, double lam, double R_L,
                           double R_H);

/// Flow-payoff gain rate of briefly exploiting the risky project instead
/// of the safe one; its unique root in p is exploitation_cutoff.
double deviation_flow_gain(double p, double alpha, double r, double lam,
                           double R_L, double R_H);

/// Safe-case expected payoff under full disentanglement (alpha = 0) in a
/// pure news setting (one arrival rate zero). Throws on non-pure regimes.
double disentangled_payoff(double p, double r, double lam, NewsRegime regime,
                           double R_L, double R_H);

/// Safe-case expected payoff under full entanglement (alpha = 1) in a
/// pure news setting.
double entangled_payoff(double p, double r, double lam, NewsRegime regime,
                        double R_L, double R_H);

/// Safe-case expected payoff under balanced news at an arbitrary alpha.
double balanced_constrained_payoff(double p, double alpha, double r,
                                   double lam, double R_L, double R_H);

/// Both extreme-alpha payoffs and the normalized gap, evaluated at
/// r = r_over_lam, lam = 1 (the pair only matters through its ratio).
SafeCasePayoffs disentanglement_gain(double p, double r_over_lam,
                                     NewsRegime regime, double R_L,
                                     double R_H);

/// The belief maximizing the normalized disentanglement gain; coarse scan
/// followed by golden-section refinement, ties broken toward smaller p.
double disentanglement_gain_argmax(NewsRegime regime, double r_over_lam,
                                   double R_L, double R_H);

/// Adjusted success probability raising the information hurdle of an
/// unfavorable project: p_x if x is favorable, else min(p_y R_y / R_x, 1).
double adjusted_success_probability(ProjectId which, const Scenario& scenario,
                                    const BeliefState& state);

/// Balanced-news exploration indices lam_x * (1 - adjusted p_x) and the
/// project explored first (Both on an exact tie).
BalancedIndexReport balanced_index(const Scenario& scenario,
                                   const BeliefState& state);

/// Expected payoff of exploring `first` until news arrives, then the
/// other project, under balanced news.
double balanced_sequential_value(const Scenario& scenario,
                                 const BeliefState& state, ProjectId first);

/// Hypothetical project for the index-cycle search (balanced news).
struct CycleProject {
  double prior_good = 0.5;
  double reward = 1.0;
  double rate = 1.0;
};

struct CycleSearchBox {
  double prior_min = 0.1, prior_max = 0.9;
  double reward_min = 1.0, reward_max = 12.0;
  double rate_min = 0.5, rate_max = 8.0;
  int steps = 6;  // lattice steps per axis
};

struct CycleResult {
  bool found = false;
  std::array<CycleProject, 3> projects{};
};

/// Searches the box for three projects whose pairwise optimal exploration
/// choices form a cycle (1 over 2, 2 over 3, 3 over 1); every returned
/// triple is re-verified through balanced_index on each pair.
CycleResult find_index_cycle(const CycleSearchBox& box);

/// Checks one candidate triple for the cycle property.
bool verify_index_cycle(const std::array<CycleProject, 3>& projects);

/// No-news exploration duration after which project x's expected value
/// falls to `other_expected`; 0 when already weakly below, nullopt
/// (never) when balanced and strictly above. Requires rate_good >=
/// rate_bad.
std::optional<double> indifference_time(const ProjectSpec& x, double p_x,
                                        double other_expected);

/// Root in (0,1) of D(p) = rate_bad_x (1-p) - rate_good_y (1 - p R_x/R_y),
/// the belief at which exploration optimally switches off the favorable
/// project x in good-news settings; nullopt when no root lies in (0,1).
/// Throws std::domain_error in the non-generic parallel case
/// rate_bad_x * R_y == rate_good_y * R_x.
std::optional<double> exploration_switch_root(const ProjectSpec& x,
                                              const ProjectSpec& y);

/// Initial exploration choice under pure good news when
/// p_L R_L < p_H R_H < R_L: true when exploring the high project first is
/// optimal. Throws std::domain_error outside that parameter region.
bool explore_high_first(const Scenario& scenario, const BeliefState& state);

/// Belief threshold on p_L above which exploration moves to the high
/// project in bad-news settings. Interior when the low project's bad-news
/// rate exceeds the high project's good-news rate; 0 when the high rate
/// dominates everywhere, 1 under pure bad news on the high project.
double low_belief_switch_threshold(const Scenario& scenario);

/// Classical per-project index p R (r + lam) / (r + p lam).
double gittins_index(double p, double R, double lam, double r);

}  // namespace forage
