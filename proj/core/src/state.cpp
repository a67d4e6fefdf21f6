#include "sqg/state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "sqg/error.hpp"

namespace sqg {

void Params::validate() const {
  if (!(tau > 0.0)) throw InvalidArgument("tau must satisfy tau > 0");
  if (N < 8) throw InvalidArgument("N must satisfy N >= 8");
  if (N > (1 << 15)) throw InvalidArgument("N must satisfy N <= 32768");
  if (!(dt >= 0.0)) throw InvalidArgument("dt must satisfy dt > 0");
  if (!(t_max >= 0.0)) throw InvalidArgument("t_max must satisfy t_max >= 0");
  if (!std::isfinite(s)) throw InvalidArgument("s must be finite");
  if (sample_every < 1) throw InvalidArgument("sample_every must satisfy sample_every >= 1");
}

HalfLatticeBox::HalfLatticeBox(int truncation) : n_(truncation) {
  if (truncation < 1) throw InvalidArgument("truncation radius must be positive");
}

bool HalfLatticeBox::is_representative_slot(std::size_t idx) const {
  const ModeIndex k = mode_at(idx);
  return k.k2 > 0 || k.k1 > 0;
}

namespace {

void validate_half_values(const HalfLatticeBox& box, const std::vector<double>& values, bool require_even_k2) {
  if (values.size() != box.size()) {
    throw InvalidArgument("half-lattice storage has " + std::to_string(values.size()) + " entries, expected " +
                          std::to_string(box.size()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!std::isfinite(v)) throw NonFiniteError("non-finite coefficient in spectral storage");
    if (v == 0.0) continue;
    if (!box.is_representative_slot(i)) {
      throw InvalidArgument("nonzero value in a non-representative slot");
    }
    if (require_even_k2 && box.mode_at(i).k2 % 2 != 0) {
      throw InvalidArgument("nonzero coefficient on the odd-k2 sublattice");
    }
  }
}

double read_even(const HalfLatticeBox& box, const std::vector<double>& values, ModeIndex k) {
  if (k.is_zero() || !box.in_box(k)) return 0.0;
  const ModeIndex rep = half_lattice_contains(k) ? k : -k;
  return values[box.index_of(rep)];
}

}  // namespace

SpectralState::SpectralState(int truncation, double time)
    : box_(truncation), values_(box_.size(), 0.0), time_(time) {}

SpectralState::SpectralState(int truncation, std::vector<double> half_values, double time)
    : box_(truncation), values_(std::move(half_values)), time_(time) {
  validate_half_values(box_, values_, true);
}

double SpectralState::operator[](ModeIndex k) const { return read_even(box_, values_, k); }

SpectralState SpectralState::with_time(double t) const {
  SpectralState out = *this;
  out.time_ = t;
  return out;
}

int SpectralState::support_radius() const {
  std::int64_t r = 0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] == 0.0) continue;
    const ModeIndex k = box_.mode_at(i);
    r = std::max({r, std::abs(k.k1), std::abs(k.k2)});
  }
  return static_cast<int>(r);
}

bool SpectralState::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

Tendency::Tendency(int truncation) : box_(truncation), values_(box_.size(), 0.0) {}

Tendency::Tendency(int truncation, std::vector<double> half_values)
    : box_(truncation), values_(std::move(half_values)) {
  validate_half_values(box_, values_, false);
}

double Tendency::operator[](ModeIndex k) const { return read_even(box_, values_, k); }

double Tendency::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

StateBuilder::StateBuilder(int truncation) : box_(truncation), values_(box_.size(), 0.0) {}

StateBuilder& StateBuilder::set(ModeIndex k, double value) {
  if (k.is_zero()) throw InvalidArgument("StateBuilder: the zero mode is fixed at 0");
  if (!box_.in_box(k)) throw InvalidArgument("StateBuilder: mode outside the truncation box");
  if (value != 0.0 && k.k2 % 2 != 0) {
    throw InvalidArgument("StateBuilder: odd-k2 coefficients must vanish");
  }
  const ModeIndex rep = half_lattice_contains(k) ? k : -k;
  values_[box_.index_of(rep)] = value;
  return *this;
}

SpectralState StateBuilder::build(double time) const { return SpectralState(box_.truncation(), values_, time); }

SpectralState initial_data(double tau, int truncation) {
  if (!(tau > 0.0)) throw InvalidArgument("initial_data: tau must satisfy tau > 0");
  if (truncation < 2) throw InvalidArgument("initial_data: truncation must contain g + e");
  return StateBuilder(truncation)
      .set(kShear, 1.0)
      .set(kPerturbation, tau)
      .set(kPerturbation + kShear, tau)
      .build(0.0);
}

double max_abs_difference(const Tendency& a, const Tendency& b) {
  if (a.truncation() != b.truncation()) throw InvalidArgument("max_abs_difference: truncation mismatch");
  double m = 0.0;
  const auto av = a.half_values();
  const auto bv = b.half_values();
  for (std::size_t i = 0; i < av.size(); ++i) m = std::max(m, std::abs(av[i] - bv[i]));
  return m;
}

}  // namespace sqg
