#pragma once

#include <cstdint>
#include <optional>

#include "sqg/state.hpp"

namespace sqg {

/// Options for the seeded random states used by property tests and selftest.
struct RandomStateOptions {
  int truncation = 16;
  /// Coefficients are drawn only for max(|k1|, |k2|) <= support_radius.
  int support_radius = 8;
  /// Fixed value for theta(e); drawn like every other mode when empty.
  std::optional<double> shear;
  /// Coefficient magnitude falls off like 1 / (1 + |k|)^decay.
  double decay = 1.0;
};

/// Even, real, odd-k2-free state with uniform(-1, 1) coefficients scaled by the
/// decay envelope. Deterministic for a given seed.
SpectralState random_state(const RandomStateOptions& options, std::uint64_t seed);

}  // namespace sqg
