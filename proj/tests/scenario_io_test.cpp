#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>

#include "doctest.h"
#include "forage/scenario_io.hpp"

using namespace forage;

namespace {

const char* kValid = R"(
# comment line
[low]
prior = 0.6
reward = 8      ; trailing comment
rate_good = 2.0
rate_bad = 0.5

[high]
prior = 0.4
reward = 12
rate_good = 1.5
rate_bad = 0.3

[scenario]
discount = 1.25
alpha = 0.5

[sweep]
axis = high.prior
from = 0.1
to = 0.9
steps = 5
)";

}  // namespace

TEST_CASE("a well-formed file parses into a validated scenario") {
  const ScenarioFile file = parse_scenario_text(kValid);
  CHECK(file.scenario.low.prior_good == 0.6);
  CHECK(file.scenario.low.reward == 8.0);
  CHECK(file.scenario.high.rate_good == 1.5);
  CHECK(file.scenario.discount == 1.25);
  CHECK(file.scenario.alpha == 0.5);
  REQUIRE(file.sweeps.size() == 1);
  CHECK(file.sweeps[0].axis == "high.prior");
  CHECK(file.sweeps[0].steps == 5);
}

TEST_CASE("diagnostics carry line numbers and key names") {
  try {
    parse_scenario_text("[low]\nprior = 0.5\nbogus = 1\n");
    FAIL("expected ParseError");
  } catch (const ParseError& err) {
    const std::string msg = err.what();
    CHECK(msg.find("bogus") != std::string::npos);
  }
  try {
    parse_scenario_text("[low]\nprior 0.5\n");
    FAIL("expected ParseError");
  } catch (const ParseError& err) {
    const std::string msg = err.what();
    CHECK(msg.find("line 2") != std::string::npos);
  }
}

TEST_CASE("structural problems are parse errors") {
  CHECK_THROWS_AS(parse_scenario_text("[low]\nprior = 0.5\n"), ParseError);
  CHECK_THROWS_AS(parse_scenario_text("[elsewhere]\n"), ParseError);
  CHECK_THROWS_AS(parse_scenario_text("prior = 0.5\n"), ParseError);
  CHECK_THROWS_AS(parse_scenario_text("[low]\nprior = abc\n"), ParseError);
  CHECK_THROWS_AS(parse_scenario_text("[low]\nprior = 0.5 extra\n"),
                  ParseError);
}

TEST_CASE("semantic violations surface as validation errors, not parse errors") {
  // Well-formed text, but the rewards are out of order.
  const char* text = R"(
[low]
prior = 0.6
reward = 12
rate_good = 1
[high]
prior = 0.4
reward = 8
rate_good = 1
)";
  CHECK_THROWS_AS(parse_scenario_text(text), std::invalid_argument);
}

TEST_CASE("sweep blocks are checked up front") {
  std::string base(kValid);
  CHECK_THROWS_AS(
      parse_scenario_text(base + "[sweep]\naxis = nope\nfrom = 0\nto = 1\nsteps = 3\n"),
      ParseError);
  CHECK_THROWS_AS(
      parse_scenario_text(base + "[sweep]\naxis = alpha\nfrom = 0\nto = 1\nsteps = 1\n"),
      ParseError);
}

TEST_CASE("axes address every tunable field") {
  Scenario sc = parse_scenario_text(kValid).scenario;
  apply_axis(sc, "discount", 2.0);
  apply_axis(sc, "alpha", 0.25);
  apply_axis(sc, "low.reward", 9.5);
  apply_axis(sc, "high.rate_bad", 0.7);
  CHECK(sc.discount == 2.0);
  CHECK(sc.alpha == 0.25);
  CHECK(sc.low.reward == 9.5);
  CHECK(sc.high.rate_bad == 0.7);
  CHECK_THROWS_AS(apply_axis(sc, "middle.prior", 0.5), ParseError);
}

TEST_CASE("csv numbers round-trip exactly") {
  for (const double v : {1.0 / 3.0, 6.2561655024401626, 1e-17, 0.0, -2.5}) {
    CHECK(std::stod(csv_number(v)) == v);
  }
}
