#pragma once

// Test-only reference implementations. Everything here works on an explicit
// std::map over the full lattice and recomputes norms with std::hypot, so it
// shares no code path with the library evaluators it checks.

#include <cmath>
#include <map>
#include <utility>

#include "sqg/state.hpp"

namespace sqg::oracle {

using FullLattice = std::map<std::pair<long, long>, double>;

inline FullLattice expand(const SpectralState& state) {
  FullLattice out;
  const long n = state.truncation();
  for (long k2 = -n; k2 <= n; ++k2) {
    for (long k1 = -n; k1 <= n; ++k1) {
      const double v = state[ModeIndex{k1, k2}];
      if (v != 0.0) out[{k1, k2}] = v;
    }
  }
  return out;
}

inline double value(const FullLattice& modes, long k1, long k2) {
  const auto it = modes.find({k1, k2});
  return it == modes.end() ? 0.0 : it->second;
}

/// 1/2 sum over ordered pairs (l, m), l + m = k, both in the box.
inline double tendency_at(const FullLattice& modes, long n, long k1, long k2) {
  double acc = 0.0;
  for (const auto& [l, theta_l] : modes) {
    const long m1 = k1 - l.first;
    const long m2 = k2 - l.second;
    if (std::labs(m1) > n || std::labs(m2) > n) continue;
    const double theta_m = value(modes, m1, m2);
    if (theta_m == 0.0) continue;
    const double w = static_cast<double>(l.first * m2 - l.second * m1);
    const double nl = std::hypot(static_cast<double>(l.first), static_cast<double>(l.second));
    const double nm = std::hypot(static_cast<double>(m1), static_cast<double>(m2));
    acc += w * (1.0 / nl - 1.0 / nm) * theta_l * theta_m;
  }
  return 0.5 * acc;
}

/// Full-lattice sum of weight(k) * theta_k^2.
template <typename Weight>
double weighted_square_sum(const FullLattice& modes, Weight weight) {
  double acc = 0.0;
  for (const auto& [k, v] : modes) acc += weight(k.first, k.second) * v * v;
  return acc;
}

}  // namespace sqg::oracle
