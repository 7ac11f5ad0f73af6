#pragma once

#include <string>
#include <vector>

namespace convspec {

struct VerifyCheck {
  std::string name;     // e.g. "spectrum/krawtchouk"
  double residual = 0;  // worst value seen over the grid
  double tolerance = 0;
  std::string detail;   // where the worst residual occurred
  bool passed() const { return residual <= tolerance; }
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_passed() const;
  // the check with the largest residual/tolerance ratio, or nullptr if empty
  const VerifyCheck* worst() const;
};

// Runs the invariant suite (closed-form spectra, orthonormality, weight
// sums and matches, closed-form vs recurrence polynomial values, spectral
// reconstruction) for the named families over their admissible parameter
// grids, sector levels 1..n_max. tol_override > 0 replaces every check's
// default tolerance.
VerifyReport run_verification(const std::vector<std::string>& families, long long n_max,
                              double tol_override = 0.0);

}  // namespace convspec
