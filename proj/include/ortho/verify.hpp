#pragma once

#include <string>
#include <vector>

namespace ortho {

struct CheckResult {
  std::string name;
  double tolerance = 0.0;
  double achieved = 0.0;
  bool pass = false;
  std::string note;
};

// Cross-identity checks: closed forms against quadrature, derivative
// identities by finite differences, the MGF internals, and (full level) the
// Basmajian convergence run and the Monte Carlo convention arbitration.
// `tol_scale` multiplies every tolerance (0 forces every check to fail;
// used to validate the harness itself).
std::vector<CheckResult> verify_checks(bool full, double tol_scale = 1.0,
                                       uint64_t seed = 20240901);

}  // namespace ortho
