#include "sqg/random_state.hpp"

#include <cmath>
#include <random>

#include "sqg/error.hpp"

namespace sqg {

SpectralState random_state(const RandomStateOptions& options, std::uint64_t seed) {
  if (options.support_radius < 1 || options.support_radius > options.truncation) {
    throw InvalidArgument("random_state: support radius must lie in [1, N]");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  const int r = options.support_radius;
  StateBuilder builder(options.truncation);
  for (int k2 = 0; k2 <= r; k2 += 2) {
    for (int k1 = -r; k1 <= r; ++k1) {
      const ModeIndex k{k1, k2};
      if (k.is_zero() || !half_lattice_contains(k)) continue;
      const double envelope = std::pow(1.0 + norm(k), -options.decay);
      builder.set(k, unit(rng) * envelope);
    }
  }
  if (options.shear) builder.set(kShear, *options.shear);
  return builder.build();
}

}  // namespace sqg
