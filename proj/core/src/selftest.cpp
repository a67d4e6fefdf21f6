#include "sqg/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "sqg/diagnostics.hpp"
#include "sqg/experiment.hpp"
#include "sqg/quadform.hpp"
#include "sqg/random_state.hpp"
#include "sqg/tendency.hpp"

namespace sqg {

namespace {

double relative_gap(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

SelftestResult check(std::string name, bool ok, std::string detail) { return {std::move(name), ok, std::move(detail)}; }

}  // namespace

std::vector<SelftestResult> run_selftest(std::uint64_t seed) {
  std::vector<SelftestResult> results;

  {
    double worst = 0.0;
    for (int n : {8, 16}) {
      for (std::uint64_t i = 0; i < 5; ++i) {
        const SpectralState s = random_state({.truncation = n, .support_radius = n}, seed + i);
        worst = std::max(worst, max_abs_difference(rhs_fast(s), rhs_direct(s)));
      }
    }
    results.push_back(check("fast_vs_direct", worst < 1e-12, "max |fast - direct| = " + format_real(worst)));
  }

  {
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 5; ++i) {
      const SpectralState s = random_state({.truncation = 12, .support_radius = 12}, seed + 100 + i);
      const TriadRates r = triad_conservation_check(s);
      worst = std::max({worst, std::abs(r.l2_rate), std::abs(r.hminus_half_rate)});
    }
    results.push_back(check("triad_conservation", worst < 1e-12, "max |rate| = " + format_real(worst)));
  }

  {
    double worst_split = 0.0;
    double worst_rewrite = 0.0;
    for (std::uint64_t i = 0; i < 5; ++i) {
      const SpectralState s = random_state({.truncation = 12, .support_radius = 8, .shear = 1.0}, seed + 200 + i);
      const ShearSplit split = sigma_and_Sigma(s);
      const double chain = j_rate(s, rhs_direct(s));
      worst_split = std::max(worst_split, relative_gap(split.sigma + split.Sigma, chain));
      worst_rewrite = std::max(worst_rewrite, relative_gap(Sigma_rewritten(s), split.Sigma));
    }
    results.push_back(check("j_rate_split", worst_split < 1e-10, "max relative gap = " + format_real(worst_split)));
    results.push_back(
        check("Sigma_regrouped", worst_rewrite < 1e-10, "max relative gap = " + format_real(worst_rewrite)));
  }

  {
    double worst = 0.0;
    for (int k2 = 1; k2 <= 64; ++k2) worst = std::max(worst, std::abs(min_eigenvalue(ModeIndex{0, k2})));
    results.push_back(check("form_degenerate_on_k1_0", worst <= 1e-14, "max |lambda_min| = " + format_real(worst)));
    const double c_star = scan_domination_constant(32, ScanSites::EvenK2);
    results.push_back(check("form_positive_even_k2", c_star > 0.0, "c* (box 32) = " + format_real(c_star)));
  }

  {
    bool ok = true;
    for (std::uint64_t i = 0; i < 10; ++i) {
      const SpectralState s = random_state({.truncation = 12, .support_radius = 12}, seed + 300 + i);
      const InterpolationCheck c = interpolation_checks(s);
      ok = ok && c.case_a_holds && c.case_b_holds;
    }
    results.push_back(check("interpolation_inequalities", ok, "10 random states"));
  }

  return results;
}

int report_selftest(const std::vector<SelftestResult>& results, std::ostream& out) {
  bool all = true;
  for (const SelftestResult& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    all = all && r.passed;
  }
  return all ? kExitOk : kExitFailure;
}

}  // namespace sqg
