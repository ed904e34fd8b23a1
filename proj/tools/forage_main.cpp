#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "forage/closedform.hpp"
#include "forage/dp_oracle.hpp"
#include "forage/model.hpp"
#include "forage/policy.hpp"
#include "forage/scenario_io.hpp"
#include "forage/simulate.hpp"
#include "forage/verify.hpp"

namespace {

using namespace forage;

constexpr int kExitVerificationFailure = 1;
constexpr int kExitParseError = 2;
constexpr int kExitPrecondition = 3;

/// Writes either to --out or to stdout.
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ParseError("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

Scenario require_scenario(const std::string& path) {
  if (path.empty())
    throw ParseError("this command requires --scenario FILE");
  return load_scenario_file(path).scenario;
}

std::string project_name(ProjectId id) {
  return id == ProjectId::Low ? "low" : "high";
}

int cmd_cutoff(const std::string& scenario_path, int grid_n) {
  const Scenario sc = require_scenario(scenario_path);
  if (!sc.safe_low())
    throw std::invalid_argument(
        "cutoff: the low project must be safe (prior = 1)");
  const double lam = std::max(sc.high.rate_good, sc.high.rate_bad);
  const double R_L = sc.low.reward, R_H = sc.high.reward;
  const double at_alpha =
      exploitation_cutoff(sc.alpha, sc.discount, lam, R_L, R_H);
  const SafeValueGrid grid =
      value_iteration_safe(sc, default_delta(sc), grid_n);
  const double oracle = exploitation_threshold(grid);
  std::cout << "myopic_cutoff = " << csv_number(myopic_cutoff(sc)) << "\n"
            << "cutoff_at_alpha = " << csv_number(at_alpha) << "\n"
            << "cutoff_alpha0 = "
            << csv_number(exploitation_cutoff(0.0, sc.discount, lam, R_L, R_H))
            << "\n"
            << "cutoff_alpha1 = "
            << csv_number(exploitation_cutoff(1.0, sc.discount, lam, R_L, R_H))
            << "\n"
            << "oracle_threshold = " << csv_number(oracle) << "\n"
            << "oracle_gap = " << csv_number(std::abs(oracle - at_alpha))
            << "\n";
  return 0;
}

int cmd_delta_surface(const std::string& scenario_path, int grid_n,
                      const std::string& out_path) {
  const Scenario sc = require_scenario(scenario_path);
  const double R_L = sc.low.reward, R_H = sc.high.reward;
  OutputTarget out(out_path);
  out.stream() << "p_H,r_over_lambda,regime,pi_alpha0,pi_alpha1,delta_pi\n";
  for (const bool good_news : {true, false}) {
    const NewsRegime regime =
        good_news ? NewsRegime::GoodNews : NewsRegime::BadNews;
    for (int i = 0; i < grid_n; ++i) {
      const double p = (i + 0.5) / grid_n;
      for (int j = 0; j < grid_n; ++j) {
        const double ratio =
            0.05 * std::pow(100.0, grid_n > 1 ? j / (grid_n - 1.0) : 0.0);
        const SafeCasePayoffs gain =
            disentanglement_gain(p, ratio, regime, R_L, R_H);
        out.stream() << csv_number(p) << ',' << csv_number(ratio) << ','
                     << (good_news ? "good" : "bad") << ','
                     << csv_number(gain.pi_alpha0) << ','
                     << csv_number(gain.pi_alpha1) << ','
                     << csv_number(gain.delta_pi_normalized) << '\n';
      }
    }
  }
  return 0;
}

Policy select_policy(const Scenario& sc) {
  if (!sc.safe_low() && sc.alpha == 1.0) return classical_policy(sc);
  return optimal_policy(sc);
}

int cmd_policy(const std::string& scenario_path, const std::string& out_path) {
  const Scenario sc = require_scenario(scenario_path);
  const Policy policy = select_policy(sc);
  const PolicyDescriptor& d = policy.descriptor();
  std::cout << "policy = " << d.name << "\n"
            << "initial_explored = " << project_name(d.initial_explored)
            << "\n"
            << "initial_exploited = " << project_name(d.initial_exploited)
            << "\n";
  if (d.explore_switch_time)
    std::cout << "explore_switch_time = " << csv_number(*d.explore_switch_time)
              << "\n";
  for (const double t : d.exploit_switch_times)
    std::cout << "exploit_switch_time = " << csv_number(t) << "\n";
  if (d.exploit_cutoff)
    std::cout << "exploit_cutoff = " << csv_number(*d.exploit_cutoff) << "\n";

  OutputTarget out(out_path);
  out.stream() << "t,p_L,p_H,explored,exploited\n";
  for (const TimelinePoint& point :
       no_news_timeline(policy, sc, default_horizon(sc))) {
    const bool explore_high = point.alloc.explore_high > point.alloc.explore_low;
    const bool exploit_high = point.alloc.exploit_high > point.alloc.exploit_low;
    out.stream() << csv_number(point.t) << ','
                 << csv_number(point.state.p_low) << ','
                 << csv_number(point.state.p_high) << ','
                 << (explore_high ? "high" : "low") << ','
                 << (exploit_high ? "high" : "low") << '\n';
  }
  return 0;
}

int cmd_simulate(const std::string& scenario_path, long n_paths,
                 std::uint64_t seed, const std::string& out_path) {
  const Scenario sc = require_scenario(scenario_path);
  const Policy policy = select_policy(sc);
  const MonteCarloReport report =
      monte_carlo(policy, sc, n_paths, default_horizon(sc), seed);
  OutputTarget out(out_path);
  out.stream() << "policy,n_paths,horizon,mean,std_error,tail_bound\n"
               << policy.descriptor().name << ',' << report.n_paths << ','
               << csv_number(report.horizon) << ',' << csv_number(report.mean)
               << ',' << csv_number(report.std_error) << ','
               << csv_number(report.tail_bound) << '\n';
  return 0;
}

int cmd_verify(const std::vector<std::string>& suites, std::uint64_t seed) {
  const std::vector<std::string> all = {"formulas", "oracle", "montecarlo",
                                        "cycle", "asymptotic"};
  const std::vector<std::string>& chosen = suites.empty() ? all : suites;
  bool ok = true;
  for (const std::string& suite : chosen) {
    const CheckList checks = run_suite(suite, seed);
    for (const CheckResult& c : checks) {
      std::cout << (c.passed ? "PASS" : "FAIL") << ' ' << suite << '/'
                << c.name;
      if (!c.detail.empty()) std::cout << " (" << c.detail << ')';
      std::cout << "\n";
      if (!c.passed) ok = false;
    }
  }
  return ok ? 0 : kExitVerificationFailure;
}

int cmd_cycle() {
  const std::array<CycleProject, 3> known = {CycleProject{0.3, 10.0, 1.0},
                                             CycleProject{0.8, 5.0, 2.0},
                                             CycleProject{0.9, 3.8, 7.0}};
  const bool known_ok = verify_index_cycle(known);
  std::cout << "known_triple_cycles = " << (known_ok ? "yes" : "no") << "\n";
  const CycleResult search = find_index_cycle(CycleSearchBox{});
  std::cout << "search_found = " << (search.found ? "yes" : "no") << "\n";
  if (search.found) {
    for (int k = 0; k < 3; ++k) {
      const CycleProject& p = search.projects[k];
      std::cout << "project_" << k + 1 << " = prior " << csv_number(p.prior_good)
                << ", reward " << csv_number(p.reward) << ", rate "
                << csv_number(p.rate) << "\n";
    }
  }
  return known_ok && search.found ? 0 : kExitVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "forage: optimal exploration/exploitation with disentangled attention"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_path;
  std::uint64_t seed = 20260824;
  long n_paths = 10000;
  int grid_n = 400;
  std::vector<std::string> suites;

  app.add_option("--scenario", scenario_path, "Scenario file")
      ->configurable(false);
  app.add_option("--seed", seed, "Master random seed");
  app.add_option("--paths", n_paths, "Number of Monte Carlo paths");
  app.add_option("--grid", grid_n, "Grid resolution");
  app.add_option("--out", out_path, "Write CSV output to this file");

  CLI::App* cutoff = app.add_subcommand(
      "cutoff", "Exploitation cutoffs and the oracle threshold");
  CLI::App* surface = app.add_subcommand(
      "delta-surface", "Disentanglement-gain surface as CSV");
  CLI::App* policy = app.add_subcommand(
      "policy", "Describe the optimal policy and its no-news timeline");
  CLI::App* simulate =
      app.add_subcommand("simulate", "Monte Carlo payoff estimate");
  CLI::App* verify =
      app.add_subcommand("verify", "Run named verification suites");
  verify->add_option("suite", suites,
                     "Suites: formulas oracle montecarlo cycle asymptotic");
  CLI::App* cycle = app.add_subcommand(
      "cycle", "Exhibit an intransitive exploration-preference triple");
  for (CLI::App* sub : {cutoff, surface, policy, simulate, verify, cycle})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
    if (grid_n < 2) throw std::invalid_argument("--grid must be at least 2");
    if (n_paths < 1) throw std::invalid_argument("--paths must be positive");
    if (cutoff->parsed()) return cmd_cutoff(scenario_path, grid_n);
    if (surface->parsed())
      return cmd_delta_surface(scenario_path,
                               grid_n == 400 ? 50 : grid_n, out_path);
    if (policy->parsed()) return cmd_policy(scenario_path, out_path);
    if (simulate->parsed())
      return cmd_simulate(scenario_path, n_paths, seed, out_path);
    if (verify->parsed()) return cmd_verify(suites, seed);
    if (cycle->parsed()) return cmd_cycle();
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitParseError;
  } catch (const ParseError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitParseError;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitPrecondition;
  } catch (const std::domain_error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitPrecondition;
  } catch (const std::logic_error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitPrecondition;
  }
  return 0;
}
