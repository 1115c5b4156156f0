#pragma once
// Flat sectioned key-value run configuration: parsing with line-numbered
// diagnostics, eager expression validation, and the typed RunConfig the
// command runner consumes.

#include <string>
#include <vector>

#include "rrmlab/asymptotics.hpp"
#include "rrmlab/grid.hpp"
#include "rrmlab/metric.hpp"

namespace rrm {

// One validated run setup.  The metric is either a family spec string
// (builtin or packed expression matrix) or a perturbation triple (P, B) of
// the configured background; both at once is rejected.
struct RunConfig {
  int n = 3;

  double a = 0, b = 0;
  int nr = 0;
  double inset = 0;

  ChartSpec chart;

  BackgroundSpec background;
  bool has_background = false;

  std::string family;
  std::vector<std::string> P;
  std::string B;
  bool has_perturbation = false;

  ParamMap params;

  std::string out;
  Endpoint endpoint = Endpoint::outer;
  DecompKind decomp = DecompKind::f_type;

  std::string source_text;  // raw config bytes, hashed into output footers

  bool has_metric() const { return !family.empty() || has_perturbation; }
};

// Parses and validates; every expression is parsed eagerly so syntax errors
// surface at load time.  Throws ConfigError (with the offending line) or
// ExprError.
RunConfig parse_config(const std::string& text);

// parse_config over the file's bytes; missing or unreadable file is a
// ConfigError.
RunConfig load_config(const std::string& path);

}  // namespace rrm
