#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "forage/model.hpp"

// Textual scenario ingestion: a small INI-style format with [low],
// [high], [scenario], and optional repeated [sweep] sections, plus the
// CSV number formatting shared by all command output.

namespace forage {

/// Malformed input (unknown section/key, bad number, missing field).
/// Distinct from semantic validation failures, which surface as
/// std::invalid_argument from Scenario::validate.
class ParseError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One sweep request over a named scenario axis, e.g. "high.prior".
struct SweepSpec {
  std::string axis;
  double from = 0.0;
  double to = 0.0;
  int steps = 0;
};

struct ScenarioFile {
  Scenario scenario;
  std::vector<SweepSpec> sweeps;
};

/// Parses the textual format. Throws ParseError on malformed input; the
/// returned scenario is validated (std::invalid_argument on violations).
ScenarioFile parse_scenario_text(const std::string& text);

/// Reads and parses a file; throws ParseError when unreadable.
ScenarioFile load_scenario_file(const std::string& path);

/// Sets one scenario field addressed by a sweep axis name. Throws
/// ParseError on unknown axis names.
void apply_axis(Scenario& scenario, const std::string& axis, double value);

/// Lossless round-trip formatting (17 significant digits).
std::string csv_number(double value);

}  // namespace forage
