#include "forage/scenario_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace forage {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_number(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParseError("invalid number for key '" + key + "': " + text);
  }
  if (trim(text.substr(used)).empty() == false)
    throw ParseError("trailing characters after number for key '" + key +
                     "': " + text);
  return value;
}

void set_project_field(ProjectSpec& project, const std::string& key,
                       double value) {
  if (key == "prior")
    project.prior_good = value;
  else if (key == "reward")
    project.reward = value;
  else if (key == "rate_good")
    project.rate_good = value;
  else if (key == "rate_bad")
    project.rate_bad = value;
  else
    throw ParseError("unknown project key '" + key + "'");
}

}  // namespace

void apply_axis(Scenario& scenario, const std::string& axis, double value) {
  const std::size_t dot = axis.find('.');
  if (dot == std::string::npos) {
    if (axis == "discount")
      scenario.discount = value;
    else if (axis == "alpha")
      scenario.alpha = value;
    else
      throw ParseError("unknown axis '" + axis + "'");
    return;
  }
  const std::string which = axis.substr(0, dot);
  const std::string field = axis.substr(dot + 1);
  if (which != "low" && which != "high")
    throw ParseError("unknown axis '" + axis + "'");
  set_project_field(which == "low" ? scenario.low : scenario.high, field,
                    value);
}

ScenarioFile parse_scenario_text(const std::string& text) {
  ScenarioFile out;
  std::istringstream stream(text);
  std::string line;
  std::string section;
  bool saw_low = false;
  bool saw_high = false;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const std::size_t comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ParseError("line " + std::to_string(line_no) +
                         ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section == "low")
        saw_low = true;
      else if (section == "high")
        saw_high = true;
      else if (section == "sweep")
        out.sweeps.emplace_back();
      else if (section != "scenario")
        throw ParseError("line " + std::to_string(line_no) +
                         ": unknown section '" + section + "'");
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw ParseError("line " + std::to_string(line_no) + ": key '" + key +
                       "' outside any section");
    if (section == "low" || section == "high") {
      set_project_field(
          section == "low" ? out.scenario.low : out.scenario.high, key,
          parse_number(key, value));
    } else if (section == "scenario") {
      if (key == "discount")
        out.scenario.discount = parse_number(key, value);
      else if (key == "alpha")
        out.scenario.alpha = parse_number(key, value);
      else
        throw ParseError("unknown scenario key '" + key + "'");
    } else {  // sweep
      SweepSpec& sweep = out.sweeps.back();
      if (key == "axis")
        sweep.axis = value;
      else if (key == "from")
        sweep.from = parse_number(key, value);
      else if (key == "to")
        sweep.to = parse_number(key, value);
      else if (key == "steps")
        sweep.steps = static_cast<int>(parse_number(key, value));
      else
        throw ParseError("unknown sweep key '" + key + "'");
    }
  }
  if (!saw_low || !saw_high)
    throw ParseError("scenario file must define [low] and [high] sections");
  for (const SweepSpec& sweep : out.sweeps) {
    if (sweep.axis.empty()) throw ParseError("sweep block missing 'axis'");
    if (sweep.steps < 2)
      throw ParseError("sweep '" + sweep.axis + "' needs steps >= 2");
    Scenario probe = out.scenario;  // rejects unknown axis names up front
    apply_axis(probe, sweep.axis, sweep.from);
  }
  out.scenario.validate();
  return out;
}

ScenarioFile load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_text(buffer.str());
}

std::string csv_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace forage
