#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "forage/model.hpp"
#include "forage/policy.hpp"
#include "forage/rng.hpp"

// Event-driven continuous-time Monte Carlo: samples project qualities and
// news arrivals, runs a policy, and integrates discounted payoffs in
// closed form on each constant-allocation segment. All reported payoffs
// are flow-normalized (a perpetual flow R has value R).

namespace forage {

/// Realized qualities, drawn once at the outset.
struct WorldDraw {
  bool low_good = false;
  bool high_good = false;
};

/// One constant-allocation stretch of a simulated path.
struct Segment {
  double start = 0.0;
  double end = 0.0;
  Allocation alloc;
  BeliefState state_at_start;
};

struct Trajectory {
  std::vector<std::pair<double, NewsEvent>> events;
  std::vector<Segment> segments;
  double payoff = 0.0;
};

struct MonteCarloReport {
  double mean = 0.0;
  double std_error = 0.0;
  long n_paths = 0;
  double horizon = 0.0;
  double tail_bound = 0.0;
};

/// 30 / discount, putting the truncation tail far below Monte Carlo noise.
double default_horizon(const Scenario& scenario);

/// Draws both qualities from the scenario's priors.
WorldDraw draw_world(const Scenario& scenario, CounterRng& rng);

/// Runs one path to the horizon. News on project z arrives at rate
/// (exploration attention on z) x (z's arrival rate for its realized
/// valence); segment boundaries fall on news events and scheduled policy
/// switches, and every emitted allocation is validated against the
/// scenario's alpha-constraint.
Trajectory run_path(const Policy& policy, const WorldDraw& world,
                    const Scenario& scenario, CounterRng& rng,
                    double horizon);

/// Mean and standard error over independent paths. Path i draws from a
/// dedicated (master_seed, i) random stream and results are reduced in a
/// fixed order, so the report is identical for any thread count
/// (parallelism capped by the FORAGE_THREADS environment variable).
MonteCarloReport monte_carlo(const Policy& policy, const Scenario& scenario,
                             long n_paths, double horizon,
                             std::uint64_t master_seed);

/// Fraction of paths whose exploitation at t_check rests on the
/// realized-best project (majority exploitation weight; a tie of two bad
/// projects counts as success).
double asymptotic_exploitation_rate(const Policy& policy,
                                    const Scenario& scenario, double t_check,
                                    long n_paths, std::uint64_t master_seed);

}  // namespace forage
