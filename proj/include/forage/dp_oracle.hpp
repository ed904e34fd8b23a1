#pragma once

#include <cstdint>
#include <vector>

#include "forage/model.hpp"

// Independent discrete-time value-iteration oracle on a belief grid.
// Per-step transitions are computed in closed form conditional on the
// explored project's truth (exact event-time discounting, exact no-news
// posterior), so the only discretization errors are interpolation of
// drifted posteriors and holding the action fixed within a step.
// All values are flow-normalized: a perpetual flow R has value R.

namespace forage {

struct GridSpec {
  int n = 400;           // cells per belief axis (n + 1 nodes)
  double delta = 1e-3;   // time step
};

/// Safe-low case: 1-D grid over the risky project's belief.
/// action[i]: 0 = exploit the safe project, 1 = exploit the risky one.
struct SafeValueGrid {
  GridSpec spec;
  std::vector<double> p;
  std::vector<double> value;
  std::vector<int> action;
  int iterations = 0;
  double sup_change = 0.0;
};

/// Two risky projects (alpha = 0): 2-D grid over (p_low, p_high),
/// row-major with p_low as the slow index. Actions encode
/// (explored << 1) | exploited with 0 = Low, 1 = High.
struct TwoRiskyGrid {
  GridSpec spec;
  std::vector<double> p_low;
  std::vector<double> p_high;
  std::vector<double> value;
  std::vector<std::uint8_t> action;
  int iterations = 0;
  double sup_change = 0.0;

  std::size_t at(int i_low, int i_high) const {
    return static_cast<std::size_t>(i_low) * p_high.size() + i_high;
  }
  ProjectId explored(int i_low, int i_high) const {
    return (action[at(i_low, i_high)] >> 1) ? ProjectId::High : ProjectId::Low;
  }
  ProjectId exploited(int i_low, int i_high) const {
    return (action[at(i_low, i_high)] & 1) ? ProjectId::High : ProjectId::Low;
  }
};

/// Default step: 1e-3 / max(discount, largest arrival rate).
double default_delta(const Scenario& scenario);

/// Solves the safe-low problem at the scenario's alpha. Throws
/// std::invalid_argument when delta violates the per-step probability
/// bound (all of r*delta and rate*delta must stay below 0.1).
SafeValueGrid value_iteration_safe(const Scenario& scenario, double delta,
                                   int grid_n);

/// Solves the two-risky problem; requires alpha = 0 and both priors
/// interior. Same delta validation as the safe case.
TwoRiskyGrid value_iteration_two_risky(const Scenario& scenario, double delta,
                                       int grid_n);

/// First crossing of a monotone 0/1 flag sequence along `axis`, reported
/// as the midpoint of the bracketing cells. Throws std::runtime_error on
/// constant or non-monotone flags.
double extract_threshold(const std::vector<double>& axis,
                         const std::vector<int>& flags);

/// Exploitation threshold of a safe-case grid (exploit risky above it).
double exploitation_threshold(const SafeValueGrid& grid);

}  // namespace forage
