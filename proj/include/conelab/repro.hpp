#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace conelab {

// The reproduction suite: every headline construction of the toolkit run at
// its stated tolerance, one pass/fail verdict each. Shared by the acceptance
// binary and by the command-line `repro` subcommand.

struct CriterionResult {
  int number = 0;
  std::string name;
  bool pass = false;
  std::string details;
  double ms = 0;
};

struct ReproOptions {
  uint64_t seed = 20240809;
  double tol = 1e-9;
  std::string only;     // run a single named criterion when nonempty
  std::string corrupt;  // test hook: perturb a built-in constant of that criterion
};

const std::vector<std::string>& criterion_names();
std::vector<CriterionResult> run_acceptance(const ReproOptions& opt = {});

}  // namespace conelab
