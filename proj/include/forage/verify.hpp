#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Independent verification batteries: each returns a list of named
// checks with pass/fail status and a diagnostic detail string. These are
// the same batteries the `verify` command and the acceptance test run.

namespace forage {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

using CheckList = std::vector<CheckResult>;

bool all_passed(const CheckList& checks);

/// 1: closed-form exploitation cutoffs vs oracle thresholds.
CheckList check_cutoff_agreement();

/// 2: closed-form payoffs vs oracle (with step halving) and Monte Carlo.
CheckList check_payoff_formulas(std::uint64_t seed);

/// 3: disentanglement-gain surface shape (sign, zero region, maximizers,
/// vanishing edges).
CheckList check_gain_surface();

/// 4: balanced-index exploration choice vs the two-risky oracle.
CheckList check_balanced_index_oracle(std::uint64_t seed);

/// 5: intransitive exploration-preference triple.
CheckList check_index_cycle();

/// 6: good-news policy structure and initial-choice rule vs the oracle.
CheckList check_good_news_structure(std::uint64_t seed);

/// 7: bad-news policy structure and switch threshold vs the oracle.
CheckList check_bad_news_structure(std::uint64_t seed);

/// 8: asymptotic exploitation of the best project; incomplete learning
/// of the entangled baseline.
CheckList check_asymptotic_optimality(std::uint64_t seed);

/// 9: martingale, drift composition, branch continuity, cutoff
/// monotonicity property suites.
CheckList check_property_suites(std::uint64_t seed);

/// Named suite used by the command-line `verify` command:
/// formulas, oracle, montecarlo, cycle, asymptotic.
/// Throws std::invalid_argument on unknown names.
CheckList run_suite(const std::string& name, std::uint64_t seed);

}  // namespace forage
