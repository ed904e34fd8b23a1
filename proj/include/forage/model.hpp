#pragma once

#include <optional>
#include <stdexcept>

// Core domain types for two-project exploration/exploitation problems:
// project parameters, news-regime classification, and Bayesian belief
// dynamics (deterministic drift absent news, conclusive jumps on news).

namespace forage {

enum class ProjectId { Low, High };

enum class Valence { Good, Bad };

enum class NewsRegime { GoodNews, BadNews, Balanced };

enum class Resolution { Unknown, KnownGood, KnownBad };

/// Which project currently has the higher expected flow value.
enum class Favored { Low, High, Both };

ProjectId other(ProjectId id);

/// One arm: prior success probability, flow reward if good, and the
/// Poisson arrival rates of conclusive good/bad news under full attention.
struct ProjectSpec {
  double prior_good = 0.5;
  double reward = 1.0;
  double rate_good = 0.0;
  double rate_bad = 0.0;

  /// Throws std::invalid_argument unless prior_good in (0,1], reward > 0,
  /// rates >= 0 and at least one rate positive.
  void validate() const;
};

/// Two projects plus discount rate and the entanglement fraction alpha:
/// the minimum attention that must go to the exploited project.
struct Scenario {
  ProjectSpec low;
  ProjectSpec high;
  double discount = 1.0;
  double alpha = 0.0;

  const ProjectSpec& project(ProjectId id) const {
    return id == ProjectId::Low ? low : high;
  }

  bool safe_low() const { return low.prior_good >= 1.0; }

  /// Throws std::invalid_argument on violations of the structural
  /// assumptions: R_H > R_L, same sign of (rate_good - rate_bad) across
  /// projects, discount > 0, alpha in [0,1], p_H < 1.
  void validate() const;
};

/// Posterior beliefs plus conclusive-news resolution flags. Conclusive
/// news is tracked by the flags, not by limiting posteriors.
struct BeliefState {
  double p_low = 0.5;
  double p_high = 0.5;
  Resolution resolved_low = Resolution::Unknown;
  Resolution resolved_high = Resolution::Unknown;

  double belief(ProjectId id) const {
    return id == ProjectId::Low ? p_low : p_high;
  }
  Resolution resolution(ProjectId id) const {
    return id == ProjectId::Low ? resolved_low : resolved_high;
  }
  void set_belief(ProjectId id, double p) {
    (id == ProjectId::Low ? p_low : p_high) = p;
  }
  void set_resolution(ProjectId id, Resolution res) {
    (id == ProjectId::Low ? resolved_low : resolved_high) = res;
  }
  bool both_resolved() const {
    return resolved_low != Resolution::Unknown &&
           resolved_high != Resolution::Unknown;
  }
};

struct NewsEvent {
  ProjectId project;
  Valence valence;
};

/// Split of the unit exploration and unit exploitation budgets.
struct Allocation {
  double explore_low = 0.0;
  double explore_high = 0.0;
  double exploit_low = 0.0;
  double exploit_high = 0.0;

  double explore(ProjectId id) const {
    return id == ProjectId::Low ? explore_low : explore_high;
  }
  double exploit(ProjectId id) const {
    return id == ProjectId::Low ? exploit_low : exploit_high;
  }
};

/// Regime per the common sign of rate_good - rate_bad; throws
/// std::invalid_argument if the two projects disagree in sign.
NewsRegime classify_regime(const Scenario& scenario);

/// No-news Bayes update after exploring a project at constant `attention`
/// for duration `t`. Computed in log-odds space; p in {0,1} is a fixed
/// point.
double drift_posterior(double p, double rate_good, double rate_bad,
                       double attention, double t);

/// Duration of drift (at constant attention) taking belief `p_from` to
/// `p_to`; nullopt when unreachable (wrong direction or no drift).
std::optional<double> drift_time_to(double p_from, double p_to,
                                    double rate_good, double rate_bad,
                                    double attention);

/// Conclusive news: posterior jumps to 0 or 1 and the project is flagged
/// resolved. Throws std::invalid_argument if the project is already
/// resolved.
BeliefState jump_posterior(const BeliefState& state, NewsEvent event);

/// Expected discount factor at the first arrival of a rate-`lam` Poisson
/// event under discount rate r: lam / (r + lam).
double expected_discount(double r, double lam);

/// Expected flow value p_z * R_z of a project at current beliefs.
double expected_value(const BeliefState& state, const Scenario& scenario,
                      ProjectId id);

/// The myopically optimal project; Both on an exact tie.
Favored favorable(const BeliefState& state, const Scenario& scenario);

/// Beliefs at the priors, all projects unresolved.
BeliefState initial_beliefs(const Scenario& scenario);

/// Throws std::logic_error unless both budgets sum to one and the
/// alpha-constraint holds (the exploited project receives at least
/// alpha * exploitation share of attention).
void validate_allocation(const Allocation& alloc, double alpha);

}  // namespace forage
