#include "sqg/quadform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "sqg/diagnostics.hpp"
#include "sqg/error.hpp"

namespace sqg {

FormCoefficients form_coefficients(ModeIndex k) {
  if (k.k2 <= 0) throw InvalidArgument("form_coefficients: requires k2 >= 1");
  const double a = 1.0 - 1.0 / norm(k - kShear);
  const double b = 1.0 - 1.0 / norm(k + kShear);
  const double k1 = static_cast<double>(k.k1);
  return {a, b, (k1 + 0.5) * a - (k1 - 0.5) * b};
}

double min_eigenvalue(const FormCoefficients& f) {
  const double half_trace = 0.5 * (f.a + f.b);
  const double half_gap = 0.5 * (f.a - f.b);
  const double radius = std::sqrt(half_gap * half_gap + f.c * f.c);
  const double det = f.a * f.b - f.c * f.c;
  if (half_trace > 0.0) return det / (half_trace + radius);
  return half_trace - radius;
}

double min_eigenvalue(ModeIndex k) { return min_eigenvalue(form_coefficients(k)); }

std::vector<ScanRow> quadform_scan(int box) {
  if (box < 1) throw InvalidArgument("quadform_scan: box must be positive");
  std::vector<ScanRow> rows;
  rows.reserve(static_cast<std::size_t>(2 * box + 1) * static_cast<std::size_t>(box));
  for (int k2 = 1; k2 <= box; ++k2) {
    for (int k1 = -box; k1 <= box; ++k1) {
      const ModeIndex k{k1, k2};
      ScanRow row{k, form_coefficients(k), 0.0, 0.0};
      row.lambda_min = min_eigenvalue(row.form);
      row.lambda_min_times_k3 = row.lambda_min * std::pow(norm(k), 3);
      rows.push_back(row);
    }
  }
  return rows;
}

double scan_domination_constant(int box, ScanSites sites) {
  if (box < 4) throw InvalidArgument("scan_domination_constant: box must be >= 4");
  double best = std::numeric_limits<double>::infinity();
  const int step = sites == ScanSites::EvenK2 ? 2 : 1;
  for (int k2 = step; k2 <= box; k2 += step) {
    for (int k1 = -box; k1 <= box; ++k1) {
      if (k1 == 0) continue;
      const ModeIndex k{k1, k2};
      best = std::min(best, min_eigenvalue(k) * std::pow(norm(k), 3));
    }
  }
  return best;
}

namespace {

double cached_even_constant(int box) {
  static std::mutex m;
  static std::map<int, double> cache;
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(box);
  if (it == cache.end()) it = cache.emplace(box, scan_domination_constant(box, ScanSites::EvenK2)).first;
  return it->second;
}

}  // namespace

LowerBoundCertificate sigma_lower_bound_certificate(const SpectralState& state) {
  const double theta_e = state[kShear];
  if (!(theta_e > 0.0)) throw InvalidArgument("sigma_lower_bound_certificate: requires theta_e > 0");
  const ShearSplit split = sigma_and_Sigma(state);

  // The forms that matter sit at j = k +- e with |j1| <= N + 1.
  const double c_star = cached_even_constant(std::max(256, state.truncation() + 2));
  double weighted = 0.0;
  const HalfLatticeBox& box = state.box();
  const auto values = state.half_values();
  for (std::size_t i = 0; i < box.size(); ++i) {
    if (values[i] == 0.0) continue;
    const ModeIndex k = box.mode_at(i);
    if (k.k2 <= 0) continue;
    weighted += values[i] * values[i] / std::pow(norm(k), 3);
  }
  return {split.Sigma, c_star * theta_e * kCertificateFactor * weighted, c_star};
}

}  // namespace sqg
