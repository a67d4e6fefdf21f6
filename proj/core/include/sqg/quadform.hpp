#pragma once

#include <vector>

#include "sqg/lattice.hpp"
#include "sqg/state.hpp"

namespace sqg {

/// Weight of the Lyapunov functional, Phi(k) = k1 + 1/2.
constexpr double lyapunov_weight(ModeIndex k) { return static_cast<double>(k.k1) + 0.5; }

/// Quadratic form a*x^2 + b*y^2 + 2*c*x*y in x = theta(k - e), y = theta(k + e)
/// that the shear part of dJ/dt decomposes into at lattice site k.
struct FormCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/// a = 1 - 1/|k - e|, b = 1 - 1/|k + e|,
/// c = (k1 + 1/2)(1 - 1/|k - e|) - (k1 - 1/2)(1 - 1/|k + e|).
/// Throws InvalidArgument for k2 <= 0.
FormCoefficients form_coefficients(ModeIndex k);

/// Smallest eigenvalue of [[a, c], [c, b]]. Computed as det / lambda_max so
/// that exactly singular forms (a = b = c) return exactly zero.
double min_eigenvalue(const FormCoefficients& form);
double min_eigenvalue(ModeIndex k);

/// Which lattice sites a scan covers. The dynamics only ever populate even
/// k2, so sites with odd k2 pair two coefficients that vanish identically;
/// in particular the forms at (+-1, 1) touch the mode (0, 1), have a = 0 or
/// b = 0, and are indefinite.
enum class ScanSites { All, EvenK2 };

struct ScanRow {
  ModeIndex k;
  FormCoefficients form;
  double lambda_min = 0.0;
  double lambda_min_times_k3 = 0.0;
};

/// Every site with |k1| <= box and 1 <= k2 <= box, ordered by k2 then k1.
std::vector<ScanRow> quadform_scan(int box);

/// c* = min lambda_min(k) * |k|^3 over 1 <= |k1| <= box, 1 <= k2 <= box,
/// restricted to the requested site family. Throws InvalidArgument for box < 4.
double scan_domination_constant(int box, ScanSites sites = ScanSites::All);

/// Global bookkeeping factor between the summed block forms and the weighted
/// mass sum_{k2 > 0} theta_k^2 / |k|^3 (see sigma_lower_bound_certificate).
inline constexpr double kCertificateFactor = 8.0 / 27.0;

struct LowerBoundCertificate {
  double shear_part = 0.0;  ///< Sigma
  double bound = 0.0;       ///< c* * theta_e * kappa * sum_{k2>0} theta_k^2 / |k|^3
  double c_star = 0.0;
  bool holds() const { return shear_part >= bound; }
};

/// Lower bound for the shear part of dJ/dt:
///
///   Sigma = theta_e * sum_j (j2/2) Q_j(theta_{j-e}, theta_{j+e})
///        >= theta_e * c* * kappa * sum_{k2 > 0} theta_k^2 / |k|^3.
///
/// Each theta_k with k2 >= 2 enters Q_{k+e} and Q_{k-e}, at least one of which
/// sits off the degenerate column k1 = 0; with |k +- e| <= 3|k|/2 and
/// j2/2 >= 1 this yields kappa = 8/27. c* is taken over even-k2 sites, the
/// only ones the dynamics populate. Modes on k2 = 0 carry no shear coupling
/// and do not enter. Requires the support margin of sigma_and_Sigma and
/// theta_e > 0.
LowerBoundCertificate sigma_lower_bound_certificate(const SpectralState& state);

}  // namespace sqg
