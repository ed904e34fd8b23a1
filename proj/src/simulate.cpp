#include "forage/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

namespace forage {

namespace {

int thread_budget() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("FORAGE_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return static_cast<int>(hw);
}

double news_rate(const ProjectSpec& spec, bool good, double attention) {
  return attention * (good ? spec.rate_good : spec.rate_bad);
}

}  // namespace

double default_horizon(const Scenario& scenario) {
  return 30.0 / scenario.discount;
}

WorldDraw draw_world(const Scenario& scenario, CounterRng& rng) {
  WorldDraw world;
  world.low_good = rng.bernoulli(scenario.low.prior_good);
  world.high_good = rng.bernoulli(scenario.high.prior_good);
  return world;
}

Trajectory run_path(const Policy& policy, const WorldDraw& world,
                    const Scenario& scenario, CounterRng& rng,
                    double horizon) {
  if (!(horizon > 0.0))
    throw std::invalid_argument("run_path: horizon must be positive");
  const double r = scenario.discount;
  Trajectory out;
  BeliefState state = initial_beliefs(scenario);
  double clock = 0.0;       // global time
  double news_clock = 0.0;  // time since the last news event
  double discounted = 0.0;  // plain present value; normalized at the end

  while (clock < horizon) {
    const Allocation alloc = policy.decide(state, news_clock);
    validate_allocation(alloc, scenario.alpha);

    // The segment runs to the horizon, the next scheduled policy switch,
    // or the first news arrival, whichever comes first.
    double seg_max = horizon - clock;
    if (const std::optional<double> change =
            policy.next_change(state, news_clock))
      seg_max = std::min(seg_max, *change);

    // Within the segment intensities are constant, so exponential
    // sampling is exact; memorylessness lets each segment redraw.
    double event_time = std::numeric_limits<double>::infinity();
    std::optional<NewsEvent> event;
    for (ProjectId z : {ProjectId::Low, ProjectId::High}) {
      if (state.resolution(z) != Resolution::Unknown) continue;
      const bool good = z == ProjectId::Low ? world.low_good : world.high_good;
      const double rate = news_rate(scenario.project(z), good, alloc.explore(z));
      if (rate <= 0.0) continue;
      const double t = rng.exponential(rate);
      if (t < event_time) {
        event_time = t;
        event = NewsEvent{z, good ? Valence::Good : Valence::Bad};
      }
    }

    const double seg_len = std::min(seg_max, event_time);
    const bool news_fires = event && event_time <= seg_max;

    // Closed-form discounted flow over the segment; payoffs accrue from
    // the realized qualities, not from beliefs.
    const double flow =
        alloc.exploit_low * (world.low_good ? scenario.low.reward : 0.0) +
        alloc.exploit_high * (world.high_good ? scenario.high.reward : 0.0);
    discounted +=
        flow * (std::exp(-r * clock) - std::exp(-r * (clock + seg_len))) / r;
    out.segments.push_back({clock, clock + seg_len, alloc, state});

    for (ProjectId z : {ProjectId::Low, ProjectId::High}) {
      if (state.resolution(z) != Resolution::Unknown) continue;
      const ProjectSpec& spec = scenario.project(z);
      state.set_belief(z, drift_posterior(state.belief(z), spec.rate_good,
                                          spec.rate_bad, alloc.explore(z),
                                          seg_len));
    }
    clock += seg_len;
    news_clock += seg_len;
    if (news_fires) {
      state = jump_posterior(state, *event);
      out.events.emplace_back(clock, *event);
      news_clock = 0.0;
    }
  }

  out.payoff = r * discounted;
  return out;
}

namespace {

/// Runs paths [begin, end) of the master-seeded ensemble, storing one
/// payoff per slot via `extract`.
template <typename Extract>
void run_block(const Policy& policy, const Scenario& scenario, long begin,
               long end, double horizon, std::uint64_t master_seed,
               std::vector<double>& slots, const Extract& extract) {
  for (long i = begin; i < end; ++i) {
    CounterRng rng(master_seed, static_cast<std::uint64_t>(i));
    const WorldDraw world = draw_world(scenario, rng);
    slots[static_cast<std::size_t>(i)] =
        extract(run_path(policy, world, scenario, rng, horizon), world);
  }
}

template <typename Extract>
std::vector<double> run_ensemble(const Policy& policy,
                                 const Scenario& scenario, long n_paths,
                                 double horizon, std::uint64_t master_seed,
                                 const Extract& extract) {
  if (n_paths < 1)
    throw std::invalid_argument("monte_carlo: need at least one path");
  std::vector<double> slots(static_cast<std::size_t>(n_paths));
  const int n_threads =
      static_cast<int>(std::min<long>(thread_budget(), n_paths));
  if (n_threads <= 1) {
    run_block(policy, scenario, 0, n_paths, horizon, master_seed, slots,
              extract);
    return slots;
  }
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(n_threads));
  for (int t = 0; t < n_threads; ++t) {
    const long begin = n_paths * t / n_threads;
    const long end = n_paths * (t + 1) / n_threads;
    workers.emplace_back([&, begin, end] {
      run_block(policy, scenario, begin, end, horizon, master_seed, slots,
                extract);
    });
  }
  for (std::thread& w : workers) w.join();
  return slots;
}

}  // namespace

MonteCarloReport monte_carlo(const Policy& policy, const Scenario& scenario,
                             long n_paths, double horizon,
                             std::uint64_t master_seed) {
  const std::vector<double> payoffs = run_ensemble(
      policy, scenario, n_paths, horizon, master_seed,
      [](const Trajectory& path, const WorldDraw&) { return path.payoff; });
  MonteCarloReport report;
  report.n_paths = n_paths;
  report.horizon = horizon;
  report.tail_bound =
      std::exp(-scenario.discount * horizon) * scenario.high.reward;
  report.mean = pairwise_sum(payoffs) / static_cast<double>(n_paths);
  if (n_paths > 1) {
    std::vector<double> sq(payoffs.size());
    for (std::size_t i = 0; i < payoffs.size(); ++i) {
      const double d = payoffs[i] - report.mean;
      sq[i] = d * d;
    }
    report.std_error = std::sqrt(pairwise_sum(sq) /
                                 (static_cast<double>(n_paths) *
                                  static_cast<double>(n_paths - 1)));
  }
  return report;
}

double asymptotic_exploitation_rate(const Policy& policy,
                                    const Scenario& scenario, double t_check,
                                    long n_paths, std::uint64_t master_seed) {
  const std::vector<double> hits = run_ensemble(
      policy, scenario, n_paths, t_check, master_seed,
      [](const Trajectory& path, const WorldDraw& world) {
        const Allocation& final_alloc = path.segments.back().alloc;
        if (!world.low_good && !world.high_good) return 1.0;  // nothing to miss
        const ProjectId best =
            world.high_good ? ProjectId::High : ProjectId::Low;
        return final_alloc.exploit(best) >= 0.5 ? 1.0 : 0.0;
      });
  return pairwise_sum(hits) / static_cast<double>(n_paths);
}

}  // namespace forage
