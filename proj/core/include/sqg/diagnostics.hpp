#pragma once

#include <string_view>

#include "sqg/state.hpp"
#include "sqg/tendency.hpp"

namespace sqg {

/// Which growth scenario a record currently witnesses. Scenario C (unbounded
/// growth of J) has no finite threshold and is not classified.
enum class CaseLabel { None, A, B };
std::string_view to_string(CaseLabel label);

/// One sampled row of every monitored scalar.
///
/// Sums marked "perturbation" run over the half-lattice with the shear mode e
/// removed; the full-lattice sums count both k and -k.
struct DiagnosticsRecord {
  double t = 0.0;
  double l2 = 0.0;        ///< sum theta_k^2
  double hm12 = 0.0;      ///< sum theta_k^2 / |k|
  double combined = 0.0;  ///< l2 - hm12
  double tail = 0.0;      ///< sum_{k != +-e} theta_k^2
  double theta_e = 0.0;
  double J = 0.0;
  double sigma = 0.0;
  double Sigma = 0.0;
  double W_phi = 0.0;     ///< perturbation sum |k| |Phi(k)| |theta_k|
  double W_k2 = 0.0;      ///< perturbation sum |k|^2 |theta_k|
  double low_mass = 0.0;  ///< perturbation sum |k|^-3 theta_k^2
  double h_half = 0.0;    ///< perturbation sum |k| theta_k^2
  double sob_half = 0.0;  ///< sum |k|^21 theta_k^2 (s = 10.5)
  double sob_s = 0.0;     ///< sum |k|^(2s) theta_k^2
  CaseLabel case_label = CaseLabel::None;
};

struct CaseThresholds {
  double a_threshold = 0.0;  ///< tau^(1/2), compared against W_phi
  double b_threshold = 0.0;  ///< tau^(5/2), compared against low_mass
  static CaseThresholds for_tau(double tau);
};

double l2_sum(const SpectralState& state);
double hminus_half_sum(const SpectralState& state);
/// sum theta_k^2 (1 - 1/|k|), summed directly rather than by subtraction.
double combined_invariant(const SpectralState& state);
double tail_mass(const SpectralState& state);
/// theta_e inside (1/2, 2).
bool theta_e_window_ok(const SpectralState& state);
/// theta_e inside the tighter window (1 - 8 tau^2, 1 + 2 tau^2).
bool theta_e_tight_window_ok(const SpectralState& state, double tau);

/// J = sum_{k in Z^2_+} (k1 + 1/2) theta_k theta_{k+e}.
double j_functional(const SpectralState& state);

/// Time derivative of J from a supplied tendency by the chain rule.
double j_rate(const SpectralState& state, const Tendency& rhs);

/// dJ/dt split into the part without the shear mode (sigma) and the part
/// linear in theta_e (Sigma).
struct ShearSplit {
  double sigma = 0.0;
  double Sigma = 0.0;
};

/// sigma and Sigma as written for the full lattice. Requires every nonzero
/// coefficient to sit at least two sites inside the truncation box (throws
/// MarginError otherwise).
ShearSplit sigma_and_Sigma(const SpectralState& state);

/// Same split restricted to the Galerkin system, valid for any state:
/// sigma_box + Sigma_box equals j_rate(state, rhs) exactly up to roundoff.
ShearSplit shear_split(const SpectralState& state, const Evaluator& rhs);

/// Sigma regrouped as theta_e * sum_{k2 > 0} (k2/2) sum_{k1} Q_k(theta_{k-e},
/// theta_{k+e}) with the block forms of form_coefficients. Same margin rule.
double Sigma_rewritten(const SpectralState& state);

/// Smallest margin (in lattice sites) between the support and the box edge.
int support_margin(const SpectralState& state);

struct SigmaBound {
  bool holds = false;
  double sigma = 0.0;
  double bound = 0.0;  ///< 2 * tail * sum_{Z^2_+} |k| |Phi(k)| |theta_k|
  double ratio = 0.0;  ///< |sigma| / bound, 0 when both vanish
};
/// |sigma| <= C * tail * W with C = 2 from the kernel bound. W includes the
/// shear mode because sigma contains theta_e * S_{2e}.
SigmaBound sigma_bound_check(const SpectralState& state, const Evaluator& rhs);

CaseLabel classify_case(const DiagnosticsRecord& record, const CaseThresholds& thresholds);

/// Homogeneous Sobolev sum over the full lattice: sum_{k != 0} |k|^(2s) theta_k^2.
double sobolev_sum(const SpectralState& state, double s);

struct PerturbationSums {
  double W_phi = 0.0;
  double W_k2 = 0.0;
  double low_mass = 0.0;
  double h_half = 0.0;
  double l2 = 0.0;       ///< sum theta_k^2
  double weight21 = 0.0; ///< sum |k|^21 theta_k^2
};
/// Weighted sums over the half-lattice without the shear mode.
PerturbationSums perturbation_sums(const SpectralState& state);

/// sum |k|^-3 over the half-lattice inside a box of radius N.
double inverse_cube_lattice_sum(int truncation);

struct InterpolationCheck {
  bool case_a_holds = false;  ///< W_k2 <= l2^(1/3) weight21^(1/6) lattice^(1/2)
  bool case_b_holds = false;  ///< h_half <= low_mass^(5/6) weight21^(1/6)
  double case_a_lhs = 0.0;
  double case_a_rhs = 0.0;
  double case_b_lhs = 0.0;
  double case_b_rhs = 0.0;
};
/// Both Hölder interpolation inequalities, with a relative slack of 1e-12 so
/// that exact equality cases are not lost to rounding.
InterpolationCheck interpolation_checks(const SpectralState& state);

/// Full record for a state. sigma and Sigma come from shear_split.
DiagnosticsRecord compute_record(const SpectralState& state, double tau, double s, const Evaluator& rhs);

/// sum theta_k^2 over modes on the outermost ring of the box (|k1| = N or
/// |k2| = N): how much mass is pressing against the truncation.
double boundary_mass(const SpectralState& state);

}  // namespace sqg
