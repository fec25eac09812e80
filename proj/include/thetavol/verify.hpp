#ifndef THETAVOL_VERIFY_HPP
#define THETAVOL_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace thetavol {

// One named acceptance check.  `margin` is the worst remaining slack across
// the check's assertions (tolerance minus measured violation, or distance to
// the bound); it is nonnegative exactly when the check passes.
struct CheckResult {
  std::string name;
  bool pass = false;
  double margin = 0.0;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 7;
  int jobs = 1;
};

// Suites: "lattice" (C01-C03), "toric" (C04), "bergman" (C05-C08, C12),
// "equilibrium" (C09), "degree" (C10), "hodge" (C11), "all".
std::vector<CheckResult> verify_suite(const std::string& suite,
                                      const VerifyOptions& opts = {});

std::vector<std::string> verify_suite_names();

}  // namespace thetavol

#endif
