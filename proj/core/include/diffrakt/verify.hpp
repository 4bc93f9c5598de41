#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace diffrakt {

struct InvariantResult {
  std::string module;
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double tolerance = 0.0;
};

struct VerifyOptions {
  // Fault injection: perturb the zeta(3) coefficient of h by this relative
  // amount while the suite runs (0 disables).
  double gaf_h_mutation = 0.0;
  // Include the (slower) Monte Carlo sampler checks.
  bool include_samplers = true;
};

std::vector<InvariantResult> run_invariant_suite(const VerifyOptions& options = {});

// One `PASS|FAIL module/name measured=... tol=...` line per result.
void print_report(std::ostream& os, const std::vector<InvariantResult>& results);

bool all_passed(const std::vector<InvariantResult>& results);

}  // namespace diffrakt
