// Acceptance gate: runs the nine verification batteries and prints one
// line per criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "forage/verify.hpp"

namespace {

constexpr std::uint64_t kSeed = 20260824;

struct Criterion {
  int number;
  std::string title;
  std::function<forage::CheckList()> run;
};

}  // namespace

int main() {
  using forage::CheckList;
  const std::vector<Criterion> criteria = {
      {1, "exploitation cutoffs match the oracle across alpha",
       [] { return forage::check_cutoff_agreement(); }},
      {2, "extreme-alpha payoff formulas match oracle and Monte Carlo",
       [] { return forage::check_payoff_formulas(kSeed); }},
      {3, "disentanglement-gain surface has the predicted shape",
       [] { return forage::check_gain_surface(); }},
      {4, "balanced exploration index matches the two-risky oracle",
       [] { return forage::check_balanced_index_oracle(kSeed); }},
      {5, "exploration preferences admit an intransitive triple",
       [] { return forage::check_index_cycle(); }},
      {6, "good-news policies have the single-switch structure",
       [] { return forage::check_good_news_structure(kSeed); }},
      {7, "bad-news policies switch exploration at the threshold",
       [] { return forage::check_bad_news_structure(kSeed); }},
      {8, "optimal policies exploit the best project asymptotically",
       [] { return forage::check_asymptotic_optimality(kSeed); }},
      {9, "martingale, composition, continuity, monotonicity properties",
       [] { return forage::check_property_suites(kSeed); }},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    const CheckList checks = criterion.run();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    const bool passed = forage::all_passed(checks);
    std::cout << "criterion " << criterion.number << " ["
              << criterion.title << "]: " << (passed ? "PASS" : "FAIL")
              << " (" << seconds << "s)\n";
    if (!passed) {
      ++failures;
      for (const forage::CheckResult& c : checks)
        if (!c.passed)
          std::cout << "    failed: " << c.name
                    << (c.detail.empty() ? "" : " — " + c.detail) << "\n";
    }
  }
  if (failures != 0)
    std::cout << failures << " criterion(s) failed\n";
  return failures == 0 ? 0 : 1;
}
