#pragma once

#include <string>
#include <vector>

namespace glhs {

struct CheckResult {
  std::string name;
  bool pass;
  double value;      // measured quantity (worst case over the check)
  double threshold;  // pass iff value <= threshold
  std::string detail;
};

/// Cross-route checks at one t < 0: moment triangle (n = 0..8), support
/// endpoint product, root brackets and residuals, curve reality and (Const2)
/// residuals, gate identity, branch monotonicity.
std::vector<CheckResult> run_validation(double t);

}  // namespace glhs
