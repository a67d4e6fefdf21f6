#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sqg/lattice.hpp"

namespace sqg {

/// Run parameters shared by the time loop and the experiment driver.
struct Params {
  double tau = 0.05;       ///< amplitude of the g-family harmonics
  int N = 64;              ///< square truncation radius, |k1|, |k2| <= N
  double dt = 0.0;         ///< base step; 0 selects the default 0.25 / N
  double t_max = 100.0;
  double s = 11.0;         ///< Sobolev order reported in addition to 10.5
  int sample_every = 16;   ///< diagnostic cadence in steps

  double effective_dt() const { return dt > 0.0 ? dt : 0.25 / N; }
  /// The (1/2, 2) window for the shear coefficient is only guaranteed for small tau.
  bool tau_flagged() const { return tau > 0.05; }
  /// Throws InvalidArgument naming the first violated constraint.
  void validate() const;
};

/// Geometry of the stored half-lattice box: k1 in [-N, N], k2 in [0, N].
/// Slots with k2 == 0 and k1 <= 0 are never representatives and stay zero.
class HalfLatticeBox {
 public:
  explicit HalfLatticeBox(int truncation);

  int truncation() const { return n_; }
  std::size_t size() const { return static_cast<std::size_t>(2 * n_ + 1) * static_cast<std::size_t>(n_ + 1); }
  std::size_t width() const { return static_cast<std::size_t>(2 * n_ + 1); }

  bool in_box(ModeIndex k) const { return k.k1 >= -n_ && k.k1 <= n_ && k.k2 >= -n_ && k.k2 <= n_; }
  /// True for slots that hold a half-lattice representative.
  bool is_representative_slot(std::size_t idx) const;
  /// Slot index of a representative (k must be in the half-lattice and the box).
  std::size_t index_of(ModeIndex k) const {
    return static_cast<std::size_t>(k.k2) * width() + static_cast<std::size_t>(k.k1 + n_);
  }
  ModeIndex mode_at(std::size_t idx) const {
    return {static_cast<std::int64_t>(idx % width()) - n_, static_cast<std::int64_t>(idx / width())};
  }

 private:
  int n_;
};

/// Real, even Fourier coefficients on the truncated lattice. Only one of each
/// pair {k, -k} is stored; theta(-k) = theta(k) holds by construction, the
/// origin is zero, and every odd-k2 coefficient vanishes.
class SpectralState {
 public:
  /// Zero state.
  explicit SpectralState(int truncation, double time = 0.0);
  /// Takes half-lattice storage in HalfLatticeBox order; validates invariants.
  SpectralState(int truncation, std::vector<double> half_values, double time);

  int truncation() const { return box_.truncation(); }
  const HalfLatticeBox& box() const { return box_; }
  double time() const { return time_; }

  /// Coefficient at any k, read through evenness. Zero outside the box and at 0.
  double operator[](ModeIndex k) const;
  std::span<const double> half_values() const { return values_; }

  SpectralState with_time(double t) const;
  /// max(|k1|, |k2|) over nonzero coefficients; 0 for the zero state.
  int support_radius() const;
  bool is_zero() const;

 private:
  HalfLatticeBox box_;
  std::vector<double> values_;
  double time_ = 0.0;
};

/// Time derivative of a SpectralState, same layout.
class Tendency {
 public:
  explicit Tendency(int truncation);
  Tendency(int truncation, std::vector<double> half_values);

  int truncation() const { return box_.truncation(); }
  const HalfLatticeBox& box() const { return box_; }
  double operator[](ModeIndex k) const;
  std::span<const double> half_values() const { return values_; }
  double max_abs() const;

 private:
  HalfLatticeBox box_;
  std::vector<double> values_;
};

/// Mutable staging area for building a SpectralState mode by mode.
class StateBuilder {
 public:
  explicit StateBuilder(int truncation);

  /// Sets theta(k) and, implicitly, theta(-k). Rejects k = 0, modes outside the
  /// box, and nonzero values on odd k2.
  StateBuilder& set(ModeIndex k, double value);
  SpectralState build(double time = 0.0) const;

 private:
  HalfLatticeBox box_;
  std::vector<double> values_;
};

/// theta(+-e) = 1, theta(+-g) = theta(+-(g + e)) = tau, everything else zero.
SpectralState initial_data(double tau, int truncation);

/// Max-norm distance between two tendencies of the same truncation.
double max_abs_difference(const Tendency& a, const Tendency& b);

}  // namespace sqg
