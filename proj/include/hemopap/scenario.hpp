#pragma once

// Scenario files: a small line-oriented block grammar (see README for the
// grammar) describing the model, the box, optional constant overrides, and
// the numerical parameters. Parsing validates everything and reports
// line-numbered diagnostics; serialize(parse(text)) is the identity on
// canonical files.

#include <string>
#include <string_view>

#include "hemopap/hypotheses.hpp"
#include "hemopap/model.hpp"

namespace hemopap {

struct Numerics {
  double h = 0.01;
  double horizon = 400.0;
  double grid_step = 0.05;
  double T_trunc = -1.0;  // <= 0: chosen from the tail bound
  double tol = 1e-6;
  double window = 100.0;  // fixed-point window is [0, window]
};

struct Scenario {
  std::string name;
  ModelSpec model;
  RangeParams range;
  Overrides overrides;
  Numerics numerics;
};

Scenario parse_scenario_text(std::string_view text, const std::string& origin);
Scenario parse_scenario(const std::string& path);  // throws ParseError
std::string serialize_scenario(const Scenario& sc);

// The bundled demonstration spec (also shipped as scenarios/example6.scn).
Scenario builtin_example6();

// Path, or the name of a bundled scenario ("example6") when no such file
// exists on disk.
Scenario load_scenario(const std::string& path_or_name);

}  // namespace hemopap
