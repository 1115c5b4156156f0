#pragma once
// Release-gating numerical criteria, run end to end on freshly built scenes
// with their tolerances pinned in code.

#include <string>
#include <vector>

namespace rrm {

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;  // the numbers behind the verdict
};

// Runs every criterion (takes minutes); echoes one "PASS name: detail" or
// "FAIL name: detail" line per criterion to stdout when echo is set.
std::vector<CriterionResult> run_acceptance(bool echo = true);

}  // namespace rrm
