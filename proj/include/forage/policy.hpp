#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "forage/model.hpp"

// Deterministic decision rules mapping (beliefs, no-news clock) to an
// attention allocation: the optimal rules for each news regime plus the
// fully entangled classical-index baseline.

namespace forage {

/// Structured summary of a policy's no-news schedule, for reporting.
struct PolicyDescriptor {
  std::string name;
  ProjectId initial_explored = ProjectId::High;
  ProjectId initial_exploited = ProjectId::High;
  /// Clock at which exploration switches projects absent news; nullopt
  /// means never.
  std::optional<double> explore_switch_time;
  /// Clocks at which the exploited project changes absent news.
  std::vector<double> exploit_switch_times;
  /// Exploitation belief threshold (safe-low case only).
  std::optional<double> exploit_cutoff;
};

/// Implementation interface: decide the allocation at (state, clock) and
/// report the duration until the next scheduled allocation change absent
/// news (nullopt = no further change).
class PolicyBase {
 public:
  virtual ~PolicyBase() = default;
  virtual Allocation decide(const BeliefState& state, double clock) const = 0;
  virtual std::optional<double> next_change(const BeliefState& state,
                                            double clock) const = 0;
};

class Policy {
 public:
  Policy(std::shared_ptr<const PolicyBase> impl, PolicyDescriptor descriptor)
      : impl_(std::move(impl)), descriptor_(std::move(descriptor)) {}

  Allocation decide(const BeliefState& state, double clock) const {
    return impl_->decide(state, clock);
  }
  std::optional<double> next_change(const BeliefState& state,
                                    double clock) const {
    return impl_->next_change(state, clock);
  }
  const PolicyDescriptor& descriptor() const { return descriptor_; }

 private:
  std::shared_ptr<const PolicyBase> impl_;
  PolicyDescriptor descriptor_;
};

struct SafeOptions {
  /// Override of the exploitation cutoff (defaults to the closed form).
  std::optional<double> cutoff;
};

struct GoodNewsOptions {
  /// Override of the initially explored project.
  std::optional<ProjectId> initial_explore;
  /// Grid used when the initial choice falls outside the closed-form
  /// region and is delegated to the value-iteration oracle.
  int oracle_grid = 160;
};

struct BadNewsOptions {
  /// Override of the belief threshold at which exploration moves to High.
  std::optional<double> switch_threshold;
};

/// Safe-low case at any alpha: exploit the risky project above the
/// cutoff, explore it with all attention the constraint allows.
Policy safe_project_policy(const Scenario& scenario, SafeOptions options = {});

/// Balanced news, alpha = 0: exploit the favorable project, explore the
/// larger information index until news.
Policy balanced_policy(const Scenario& scenario);

/// Good news, alpha = 0: at most one no-news exploration switch, at the
/// belief where the switch condition's linear gain function crosses zero.
Policy good_news_policy(const Scenario& scenario, GoodNewsOptions options = {});

/// Bad news, alpha = 0: explore Low until its belief climbs to the switch
/// threshold, then High until news.
Policy bad_news_policy(const Scenario& scenario, BadNewsOptions options = {});

/// Fully entangled baseline (alpha = 1): exploit and explore the project
/// with the larger classical index; on index ties in drifting regimes,
/// split attention to keep the indices falling together.
Policy classical_policy(const Scenario& scenario);

/// Dispatches to the optimal policy for the scenario: the safe-low rule
/// when Low is safe, otherwise the regime-specific alpha = 0 rule.
Policy optimal_policy(const Scenario& scenario);

/// One node of a deterministic no-news trajectory.
struct TimelinePoint {
  double t = 0.0;
  BeliefState state;
  Allocation alloc;
};

/// Walks the policy forward assuming no news ever arrives, recording a
/// point at the start and after every allocation change, up to `horizon`.
std::vector<TimelinePoint> no_news_timeline(const Policy& policy,
                                            const Scenario& scenario,
                                            double horizon,
                                            int max_points = 10000);

}  // namespace forage
