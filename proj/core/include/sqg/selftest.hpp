#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sqg {

struct SelftestResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Quick oracle-equivalence and invariant checks on small truncations:
/// fast vs direct tendency, triad conservation, the sigma/Sigma split against
/// the chain rule, the regrouped Sigma, form degeneracy at k1 = 0, and the
/// interpolation inequalities. Seconds of runtime.
std::vector<SelftestResult> run_selftest(std::uint64_t seed);

/// Prints one line per check; returns 0 if every check passed, 1 otherwise.
int report_selftest(const std::vector<SelftestResult>& results, std::ostream& out);

}  // namespace sqg
