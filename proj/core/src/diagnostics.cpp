#include "sqg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "sqg/error.hpp"
#include "sqg/quadform.hpp"

namespace sqg {

namespace {

// Visits every stored (representative) mode with a nonzero coefficient.
template <typename F>
void for_each_nonzero(const SpectralState& state, F&& f) {
  const HalfLatticeBox& box = state.box();
  const auto values = state.half_values();
  for (std::size_t i = 0; i < box.size(); ++i) {
    if (values[i] != 0.0) f(box.mode_at(i), values[i]);
  }
}

double squared_norm(ModeIndex k) { return static_cast<double>(k.k1 * k.k1 + k.k2 * k.k2); }

// 1 - 1/|k|, the weight of the combined invariant.
double shear_factor(ModeIndex k) { return 1.0 - 1.0 / norm(k); }

SpectralState without_shear(const SpectralState& state) {
  std::vector<double> values(state.half_values().begin(), state.half_values().end());
  values[state.box().index_of(kShear)] = 0.0;
  return SpectralState(state.truncation(), std::move(values), state.time());
}

void require_margin(const SpectralState& state, const char* what) {
  const int margin = support_margin(state);
  if (margin < 2) {
    throw MarginError(std::string(what) + ": support margin " + std::to_string(margin) +
                      " from the truncation boundary, need at least 2");
  }
}

}  // namespace

std::string_view to_string(CaseLabel label) {
  switch (label) {
    case CaseLabel::A:
      return "A";
    case CaseLabel::B:
      return "B";
    case CaseLabel::None:
      break;
  }
  return "NONE";
}

CaseThresholds CaseThresholds::for_tau(double tau) {
  if (!(tau > 0.0)) throw InvalidArgument("CaseThresholds: tau must be positive");
  return {std::sqrt(tau), std::pow(tau, 2.5)};
}

double l2_sum(const SpectralState& state) {
  double sum = 0.0;
  for_each_nonzero(state, [&](ModeIndex, double v) { sum += v * v; });
  return 2.0 * sum;
}

double hminus_half_sum(const SpectralState& state) {
  double sum = 0.0;
  for_each_nonzero(state, [&](ModeIndex k, double v) { sum += v * v / norm(k); });
  return 2.0 * sum;
}

double combined_invariant(const SpectralState& state) {
  double sum = 0.0;
  for_each_nonzero(state, [&](ModeIndex k, double v) { sum += v * v * shear_factor(k); });
  return 2.0 * sum;
}

double tail_mass(const SpectralState& state) {
  double sum = 0.0;
  for_each_nonzero(state, [&](ModeIndex k, double v) {
    if (k != kShear) sum += v * v;
  });
  return 2.0 * sum;
}

bool theta_e_window_ok(const SpectralState& state) {
  const double te = state[kShear];
  return te > 0.5 && te < 2.0;
}

bool theta_e_tight_window_ok(const SpectralState& state, double tau) {
  const double te = state[kShear];
  return te > 1.0 - 8.0 * tau * tau && te < 1.0 + 2.0 * tau * tau;
}

double j_functional(const SpectralState& state) {
  double sum = 0.0;
  for_each_nonzero(state, [&](ModeIndex k, double v) { sum += lyapunov_weight(k) * v * state[k + kShear]; });
  return sum;
}

double j_rate(const SpectralState& state, const Tendency& rhs) {
  const HalfLatticeBox& box = state.box();
  double sum = 0.0;
  for (std::size_t i = 0; i < box.size(); ++i) {
    if (!box.is_representative_slot(i)) continue;
    const ModeIndex k = box.mode_at(i);
    const ModeIndex next = k + kShear;
    sum += lyapunov_weight(k) * (rhs[k] * state[next] + state[k] * rhs[next]);
  }
  return sum;
}

int support_margin(const SpectralState& state) { return state.truncation() - state.support_radius(); }

ShearSplit shear_split(const SpectralState& state, const Evaluator& rhs) {
  const Tendency tail_rate = rhs(without_shear(state));
  const HalfLatticeBox& box = state.box();
  const double theta_e = state[kShear];

  // Galerkin shear interaction E_j = theta_e j2 (a_{j-e} theta_{j-e} - a_{j+e} theta_{j+e}).
  auto shear_rate = [&](ModeIndex j) -> double {
    if (j.k2 == 0 || !box.in_box(j)) return 0.0;
    const ModeIndex lo = j - kShear;
    const ModeIndex hi = j + kShear;
    return theta_e * static_cast<double>(j.k2) * (shear_factor(lo) * state[lo] - shear_factor(hi) * state[hi]);
  };

  ShearSplit out;
  for (std::size_t i = 0; i < box.size(); ++i) {
    if (!box.is_representative_slot(i)) continue;
    const ModeIndex k = box.mode_at(i);
    const ModeIndex next = k + kShear;
    const double phi = lyapunov_weight(k);
    out.sigma += phi * (state[k] * tail_rate[next] + state[next] * tail_rate[k]);
    out.Sigma += phi * (state[k] * shear_rate(next) + state[next] * shear_rate(k));
  }
  return out;
}

ShearSplit sigma_and_Sigma(const SpectralState& state) {
  require_margin(state, "sigma_and_Sigma");
  const int n = state.truncation();
  const Tendency tail_rate = rhs_direct(without_shear(state));
  const double theta_e = state[kShear];

  ShearSplit out;
  const HalfLatticeBox& box = state.box();
  for (std::size_t i = 0; i < box.size(); ++i) {
    if (!box.is_representative_slot(i)) continue;
    const ModeIndex k = box.mode_at(i);
    const ModeIndex next = k + kShear;
    out.sigma += lyapunov_weight(k) * (state[k] * tail_rate[next] + state[next] * tail_rate[k]);
  }

  // Sigma = theta_e sum_{k in Z^2_+} (e ^ k) Phi(k) [ a_k theta_k^2 - a_{k+2e} theta_k theta_{k+2e}
  //         - a_{k+e} theta_{k+e}^2 + a_{k-e} theta_{k+e} theta_{k-e} ], a_k = 1 - 1/|k|.
  // Rows with k2 = 0 drop out since e ^ k = k2.
  double shear = 0.0;
  for (std::int64_t k2 = 1; k2 <= n; ++k2) {
    for (std::int64_t k1 = -n; k1 <= n; ++k1) {
      const ModeIndex k{k1, k2};
      const ModeIndex k_m = k - kShear;
      const ModeIndex k_p = k + kShear;
      const ModeIndex k_pp = k_p + kShear;
      const double th = state[k];
      const double th_m = state[k_m];
      const double th_p = state[k_p];
      const double th_pp = state[k_pp];
      const double bracket = shear_factor(k) * th * th - shear_factor(k_pp) * th * th_pp -
                             shear_factor(k_p) * th_p * th_p + shear_factor(k_m) * th_p * th_m;
      shear += static_cast<double>(wedge(kShear, k)) * lyapunov_weight(k) * bracket;
    }
  }
  out.Sigma = theta_e * shear;
  return out;
}

double Sigma_rewritten(const SpectralState& state) {
  require_margin(state, "Sigma_rewritten");
  const int n = state.truncation();
  double sum = 0.0;
  for (std::int64_t k2 = 1; k2 <= n; ++k2) {
    double row = 0.0;
    for (std::int64_t k1 = -n - 1; k1 <= n + 1; ++k1) {
      const ModeIndex k{k1, k2};
      const double x = state[k - kShear];
      const double y = state[k + kShear];
      if (x == 0.0 && y == 0.0) continue;
      const FormCoefficients f = form_coefficients(k);
      row += f.a * x * x + f.b * y * y + 2.0 * f.c * x * y;
    }
    sum += 0.5 * static_cast<double>(k2) * row;
  }
  return state[kShear] * sum;
}

SigmaBound sigma_bound_check(const SpectralState& state, const Evaluator& rhs) {
  double weighted = 0.0;
  for_each_nonzero(state, [&](ModeIndex k, double v) { weighted += norm(k) * std::abs(lyapunov_weight(k)) * std::abs(v); });
  SigmaBound out;
  out.sigma = shear_split(state, rhs).sigma;
  out.bound = 2.0 * tail_mass(state) * weighted;
  out.holds = std::abs(out.sigma) <= out.bound;
  out.ratio = out.bound > 0.0 ? std::abs(out.sigma) / out.bound : 0.0;
  return out;
}

CaseLabel classify_case(const DiagnosticsRecord& record, const CaseThresholds& thresholds) {
  if (record.W_phi >= thresholds.a_threshold) return CaseLabel::A;
  if (record.low_mass >= thresholds.b_threshold) return CaseLabel::B;
  return CaseLabel::None;
}

double sobolev_sum(const SpectralState& state, double s) {
  double sum = 0.0;
  for_each_nonzero(state, [&](ModeIndex k, double v) { sum += std::pow(squared_norm(k), s) * v * v; });
  return 2.0 * sum;
}

PerturbationSums perturbation_sums(const SpectralState& state) {
  PerturbationSums out;
  for_each_nonzero(state, [&](ModeIndex k, double v) {
    if (k == kShear) return;
    const double r = norm(k);
    const double sq = v * v;
    out.W_phi += r * std::abs(lyapunov_weight(k)) * std::abs(v);
    out.W_k2 += squared_norm(k) * std::abs(v);
    out.low_mass += sq / (r * r * r);
    out.h_half += r * sq;
    out.l2 += sq;
    out.weight21 += std::pow(squared_norm(k), 10.5) * sq;
  });
  return out;
}

double inverse_cube_lattice_sum(int truncation) {
  static std::mutex m;
  static std::map<int, double> cache;
  std::lock_guard<std::mutex> lock(m);
  if (auto it = cache.find(truncation); it != cache.end()) return it->second;
  const HalfLatticeBox box(truncation);
  double sum = 0.0;
  for (std::size_t i = 0; i < box.size(); ++i) {
    if (box.is_representative_slot(i)) sum += std::pow(norm(box.mode_at(i)), -3);
  }
  cache.emplace(truncation, sum);
  return sum;
}

InterpolationCheck interpolation_checks(const SpectralState& state) {
  constexpr double slack = 1.0 + 1e-12;
  const PerturbationSums p = perturbation_sums(state);
  InterpolationCheck out;
  out.case_a_lhs = p.W_k2;
  out.case_a_rhs = std::cbrt(p.l2) * std::pow(p.weight21, 1.0 / 6.0) * std::sqrt(inverse_cube_lattice_sum(state.truncation()));
  out.case_b_lhs = p.h_half;
  out.case_b_rhs = std::pow(p.low_mass, 5.0 / 6.0) * std::pow(p.weight21, 1.0 / 6.0);
  out.case_a_holds = out.case_a_lhs <= out.case_a_rhs * slack;
  out.case_b_holds = out.case_b_lhs <= out.case_b_rhs * slack;
  return out;
}

DiagnosticsRecord compute_record(const SpectralState& state, double tau, double s, const Evaluator& rhs) {
  DiagnosticsRecord r;
  r.t = state.time();
  r.l2 = l2_sum(state);
  r.hm12 = hminus_half_sum(state);
  r.combined = r.l2 - r.hm12;
  r.tail = tail_mass(state);
  r.theta_e = state[kShear];
  r.J = j_functional(state);
  const ShearSplit split = shear_split(state, rhs);
  r.sigma = split.sigma;
  r.Sigma = split.Sigma;
  const PerturbationSums p = perturbation_sums(state);
  r.W_phi = p.W_phi;
  r.W_k2 = p.W_k2;
  r.low_mass = p.low_mass;
  r.h_half = p.h_half;
  r.sob_half = sobolev_sum(state, 10.5);
  r.sob_s = sobolev_sum(state, s);
  r.case_label = classify_case(r, CaseThresholds::for_tau(tau));
  return r;
}

double boundary_mass(const SpectralState& state) {
  const int n = state.truncation();
  double sum = 0.0;
  for_each_nonzero(state, [&](ModeIndex k, double v) {
    if (std::abs(k.k1) == n || k.k2 == n) sum += v * v;
  });
  return 2.0 * sum;
}

}  // namespace sqg
