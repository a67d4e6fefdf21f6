#include "sqg/lattice.hpp"

#include <cmath>

#include "sqg/error.hpp"

namespace sqg {

bool half_lattice_contains(ModeIndex k) {
  if (k.is_zero()) {
    throw InvalidArgument("half_lattice_contains: the zero mode has no representative");
  }
  return k.k2 > 0 || (k.k2 == 0 && k.k1 > 0);
}

double norm(ModeIndex k) {
  // k1^2 + k2^2 is exact in double for any lattice we store, so sqrt rounds once.
  return std::sqrt(static_cast<double>(k.k1 * k.k1 + k.k2 * k.k2));
}

double kernel_weight(ModeIndex l, ModeIndex m) {
  if (l.is_zero() || m.is_zero()) {
    throw InvalidArgument("kernel_weight: zero mode in triad");
  }
  return static_cast<double>(wedge(l, m)) * (1.0 / norm(l) - 1.0 / norm(m));
}

}  // namespace sqg
