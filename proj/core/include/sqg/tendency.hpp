#pragma once

#include <functional>
#include <memory>
#include <string_view>

#include "sqg/state.hpp"

namespace sqg {

/// Right-hand side of the symmetrized Fourier SQG system,
///
///   d/dt theta_k = 1/2 * sum_{l+m=k} (l ^ m)(1/|l| - 1/|m|) theta_l theta_m,
///
/// with l, m and k all restricted to the truncation box (Galerkin projection).
/// O(M^2) in the number of retained modes; summation order is fixed.
Tendency rhs_direct(const SpectralState& state);

/// Transform-based evaluator of the same right-hand side. Builds the velocity
/// u = perp-grad (-Laplacian)^{-1/2} theta on a padded collocation grid, forms
/// (u . grad) theta there and projects back. The grid is at least 3N+1 wide in
/// k1 and 3(N/2)+1 in k2/2 (odd k2 never occurs), so the quadratic product is
/// alias-free and the result equals rhs_direct up to roundoff.
///
/// Instances own FFTW plans and scratch buffers; use one per thread.
class FastTendency {
 public:
  explicit FastTendency(int truncation);
  ~FastTendency();
  FastTendency(FastTendency&&) noexcept;
  FastTendency& operator=(FastTendency&&) noexcept;
  FastTendency(const FastTendency&) = delete;
  FastTendency& operator=(const FastTendency&) = delete;

  Tendency operator()(const SpectralState& state);

  int truncation() const;
  int grid_x1() const;
  int grid_x2() const;

  struct Impl;  // opaque; holds the FFTW state

 private:
  std::unique_ptr<Impl> impl_;
};

/// Convenience wrapper over a thread-local FastTendency cached per truncation.
Tendency rhs_fast(const SpectralState& state);

/// Orientation of the perpendicular gradient (+1 for (-d2, d1), -1 for
/// (d2, -d1)) that reproduces rhs_direct. Determined once per process on a
/// fixed probe state; throws CalibrationError if neither orientation agrees to
/// 1e-12.
int perp_orientation();

/// Smallest n >= target whose prime factors are all in {2, 3, 5, 7}.
int fft_friendly_size(int target);

/// Instantaneous rates <theta, rhs> and <theta / |k|, rhs> over the full
/// lattice. Both vanish for the exact Galerkin dynamics.
struct TriadRates {
  double l2_rate = 0.0;
  double hminus_half_rate = 0.0;
};
TriadRates triad_conservation_check(const SpectralState& state, const Tendency& rhs);
TriadRates triad_conservation_check(const SpectralState& state);

enum class Method { Direct, Fast };
Method parse_method(std::string_view text);
std::string_view to_string(Method method);

using Evaluator = std::function<Tendency(const SpectralState&)>;
/// Evaluator bound to one truncation. The fast variant owns its own plans.
Evaluator make_evaluator(Method method, int truncation);

}  // namespace sqg
