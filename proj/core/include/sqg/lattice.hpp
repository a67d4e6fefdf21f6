#pragma once

#include <cstdint>
#include <functional>

namespace sqg {

/// Integer wavevector k = (k1, k2) labelling one Fourier harmonic on the torus.
struct ModeIndex {
  std::int64_t k1 = 0;
  std::int64_t k2 = 0;

  friend constexpr bool operator==(ModeIndex, ModeIndex) = default;
  constexpr ModeIndex operator-() const { return {-k1, -k2}; }
  friend constexpr ModeIndex operator+(ModeIndex a, ModeIndex b) { return {a.k1 + b.k1, a.k2 + b.k2}; }
  friend constexpr ModeIndex operator-(ModeIndex a, ModeIndex b) { return {a.k1 - b.k1, a.k2 - b.k2}; }
  constexpr bool is_zero() const { return k1 == 0 && k2 == 0; }
};

/// The shear wavevector e = (1, 0).
inline constexpr ModeIndex kShear{1, 0};
/// The perturbation wavevector g = (0, 2).
inline constexpr ModeIndex kPerturbation{0, 2};

/// Half-lattice membership: k2 > 0, or k2 == 0 and k1 > 0. Exactly one of k
/// and -k belongs. Throws InvalidArgument for k = 0.
bool half_lattice_contains(ModeIndex k);

/// l1*m2 - l2*m1.
constexpr std::int64_t wedge(ModeIndex l, ModeIndex m) { return l.k1 * m.k2 - l.k2 * m.k1; }

/// Euclidean length |k|.
double norm(ModeIndex k);

/// Triad coupling (l ^ m)(1/|l| - 1/|m|). Symmetric in (l, m) and bounded by
/// 2|l + m|. Throws InvalidArgument if either mode is zero.
double kernel_weight(ModeIndex l, ModeIndex m);

}  // namespace sqg

template <>
struct std::hash<sqg::ModeIndex> {
  std::size_t operator()(sqg::ModeIndex k) const noexcept {
    return std::hash<std::int64_t>{}(k.k1 * 1000003 + k.k2);
  }
};
