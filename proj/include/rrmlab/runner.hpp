#pragma once
// Wires a validated configuration to the compute modules: builds the scene,
// runs one subcommand, writes its CSV artifact, and returns the process exit
// code (0 = pass, 1 = a checked invariant failed).  Input-class problems
// throw ConfigError/ExprError instead, for the caller to map to exit code 2.

#include <string>

#include "rrmlab/config.hpp"
#include "rrmlab/rigidity.hpp"

namespace rrm {

struct RunOptions {
  std::string cmd;
  std::string config_path;  // may stay empty for selftest
  std::string out_dir = ".";
  int refine = 2;           // resolution factor for convergence studies
  RrrSource rrr_source = RrrSource::radial;
  double tol = 0;           // 0 = per-command default
};

int run_command(const RunOptions& opt);

}  // namespace rrm
