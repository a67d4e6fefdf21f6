#include "sqg/tendency.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "sqg/error.hpp"
#include "sqg/random_state.hpp"

namespace sqg {

namespace {

// FFTW's planner is not thread-safe; execution with distinct buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FullLatticeTerm {
  std::int64_t k1;
  std::int64_t k2;
  double value;
  double inv_norm;
};

}  // namespace

Tendency rhs_direct(const SpectralState& state) {
  const int n = state.truncation();
  const std::int64_t w = 2 * n + 1;
  auto full_index = [&](std::int64_t k1, std::int64_t k2) { return (k2 + n) * w + (k1 + n); };

  std::vector<double> full(static_cast<std::size_t>(w * w), 0.0);
  std::vector<double> inv_norm(static_cast<std::size_t>(w * w), 0.0);
  std::vector<FullLatticeTerm> support;
  for (std::int64_t k2 = -n; k2 <= n; ++k2) {
    for (std::int64_t k1 = -n; k1 <= n; ++k1) {
      const ModeIndex k{k1, k2};
      if (k.is_zero()) continue;
      const auto fi = static_cast<std::size_t>(full_index(k1, k2));
      inv_norm[fi] = 1.0 / norm(k);
      full[fi] = state[k];
      if (full[fi] != 0.0) support.push_back({k1, k2, full[fi], inv_norm[fi]});
    }
  }

  const HalfLatticeBox& box = state.box();
  std::vector<double> out(box.size(), 0.0);
  for (std::size_t idx = 0; idx < box.size(); ++idx) {
    if (!box.is_representative_slot(idx)) continue;
    const ModeIndex k = box.mode_at(idx);
    double acc = 0.0;
    for (const FullLatticeTerm& l : support) {
      const std::int64_t m1 = k.k1 - l.k1;
      const std::int64_t m2 = k.k2 - l.k2;
      if (m1 < -n || m1 > n || m2 < -n || m2 > n) continue;
      const auto mi = static_cast<std::size_t>(full_index(m1, m2));
      const double theta_m = full[mi];
      if (theta_m == 0.0) continue;
      const std::int64_t wdg = l.k1 * m2 - l.k2 * m1;
      if (wdg == 0) continue;
      acc += static_cast<double>(wdg) * (l.inv_norm - inv_norm[mi]) * l.value * theta_m;
    }
    out[idx] = 0.5 * acc;
  }
  return Tendency(n, std::move(out));
}

int fft_friendly_size(int target) {
  for (int n = std::max(target, 1);; ++n) {
    int r = n;
    for (int p : {2, 3, 5, 7}) {
      while (r % p == 0) r /= p;
    }
    if (r == 1) return n;
  }
}

struct FastTendency::Impl {
  int n = 0;
  int half_rows = 0;  // largest j with k2 = 2j inside the box
  int m1 = 0;
  int m2 = 0;
  int m2c = 0;
  double* field_a = nullptr;
  double* field_b = nullptr;
  double* product = nullptr;
  fftw_complex* spectrum = nullptr;
  fftw_plan synthesize = nullptr;
  fftw_plan analyze = nullptr;
  std::vector<double> inv_norm;  // [j][k1 + n]
  std::vector<double> theta;     // [j][k1 + n], full-lattice values at k2 = 2j >= 0

  explicit Impl(int truncation) : n(truncation) {
    half_rows = n / 2;
    m1 = fft_friendly_size(3 * n + 1);
    m2 = fft_friendly_size(3 * half_rows + 1);
    m2c = m2 / 2 + 1;
    const auto real_size = static_cast<std::size_t>(m1) * static_cast<std::size_t>(m2);
    const auto complex_size = static_cast<std::size_t>(m1) * static_cast<std::size_t>(m2c);
    field_a = fftw_alloc_real(real_size);
    field_b = fftw_alloc_real(real_size);
    product = fftw_alloc_real(real_size);
    spectrum = fftw_alloc_complex(complex_size);
    {
      std::lock_guard<std::mutex> lock(planner_mutex());
      // FFTW_ESTIMATE keeps plan selection, and therefore rounding, identical
      // from run to run.
      synthesize = fftw_plan_dft_c2r_2d(m1, m2, spectrum, field_a, FFTW_ESTIMATE);
      analyze = fftw_plan_dft_r2c_2d(m1, m2, product, spectrum, FFTW_ESTIMATE);
    }
    if (!field_a || !field_b || !product || !spectrum || !synthesize || !analyze) {
      release();
      throw Error("FastTendency: FFTW allocation or planning failed");
    }

    const std::size_t row = static_cast<std::size_t>(2 * n + 1);
    inv_norm.assign(row * static_cast<std::size_t>(half_rows + 1), 0.0);
    theta.assign(inv_norm.size(), 0.0);
    for (int j = 0; j <= half_rows; ++j) {
      for (int k1 = -n; k1 <= n; ++k1) {
        const ModeIndex k{k1, 2 * j};
        if (!k.is_zero()) inv_norm[static_cast<std::size_t>(j) * row + static_cast<std::size_t>(k1 + n)] = 1.0 / norm(k);
      }
    }
  }

  ~Impl() { release(); }

  void release() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (synthesize) fftw_destroy_plan(synthesize);
    if (analyze) fftw_destroy_plan(analyze);
    fftw_free(field_a);
    fftw_free(field_b);
    fftw_free(product);
    fftw_free(spectrum);
    synthesize = analyze = nullptr;
    field_a = field_b = product = nullptr;
    spectrum = nullptr;
  }

  // Fills the spectrum with i * multiplier(k1, k2) * theta_k and synthesizes
  // the real field into `out`. Every multiplier here is real, so each
  // coefficient is purely imaginary.
  template <typename Multiplier>
  void synthesize_field(Multiplier multiplier, double* out) {
    const auto complex_size = static_cast<std::size_t>(m1) * static_cast<std::size_t>(m2c);
    for (std::size_t i = 0; i < complex_size; ++i) {
      spectrum[i][0] = 0.0;
      spectrum[i][1] = 0.0;
    }
    const std::size_t row = static_cast<std::size_t>(2 * n + 1);
    for (int j = 0; j <= half_rows; ++j) {
      for (int k1 = -n; k1 <= n; ++k1) {
        const std::size_t ti = static_cast<std::size_t>(j) * row + static_cast<std::size_t>(k1 + n);
        const double value = theta[ti];
        if (value == 0.0) continue;
        const int p = (k1 + m1) % m1;
        fftw_complex& c = spectrum[static_cast<std::size_t>(p) * static_cast<std::size_t>(m2c) + static_cast<std::size_t>(j)];
        c[1] = multiplier(k1, 2 * j, inv_norm[ti]) * value;
      }
    }
    fftw_execute_dft_c2r(synthesize, spectrum, out);
  }

  // (u . grad) theta with u = (-d2 psi, d1 psi), psi = (-Laplacian)^{-1/2} theta.
  std::vector<double> advection(const SpectralState& state) {
    const std::size_t row = static_cast<std::size_t>(2 * n + 1);
    for (int j = 0; j <= half_rows; ++j) {
      for (int k1 = -n; k1 <= n; ++k1) {
        theta[static_cast<std::size_t>(j) * row + static_cast<std::size_t>(k1 + n)] = state[ModeIndex{k1, 2 * j}];
      }
    }
    const auto real_size = static_cast<std::size_t>(m1) * static_cast<std::size_t>(m2);

    synthesize_field([](int, int k2, double inv) { return -k2 * inv; }, field_a);  // u1
    synthesize_field([](int k1, int, double) { return static_cast<double>(k1); }, field_b);  // d1 theta
    for (std::size_t i = 0; i < real_size; ++i) product[i] = field_a[i] * field_b[i];

    synthesize_field([](int k1, int, double inv) { return k1 * inv; }, field_a);  // u2
    synthesize_field([](int, int k2, double) { return static_cast<double>(k2); }, field_b);  // d2 theta
    for (std::size_t i = 0; i < real_size; ++i) product[i] += field_a[i] * field_b[i];

    fftw_execute_dft_r2c(analyze, product, spectrum);

    const HalfLatticeBox& box = state.box();
    std::vector<double> out(box.size(), 0.0);
    const double scale = 1.0 / static_cast<double>(real_size);
    for (int j = 0; j <= half_rows; ++j) {
      for (int k1 = -n; k1 <= n; ++k1) {
        const ModeIndex k{k1, 2 * j};
        if (k.is_zero() || !half_lattice_contains(k)) continue;
        const int p = (k1 + m1) % m1;
        const auto si = static_cast<std::size_t>(p) * static_cast<std::size_t>(m2c) + static_cast<std::size_t>(j);
        out[box.index_of(k)] = spectrum[si][0] * scale;
      }
    }
    return out;
  }
};

namespace {

int calibrate_orientation() {
  const SpectralState probe = random_state({.truncation = 8, .support_radius = 8, .shear = 1.0, .decay = 1.0}, 20240611u);
  const Tendency reference = rhs_direct(probe);
  FastTendency::Impl impl(probe.truncation());
  const std::vector<double> raw = impl.advection(probe);

  double diff_plus = 0.0;
  double diff_minus = 0.0;
  const auto ref = reference.half_values();
  for (std::size_t i = 0; i < raw.size(); ++i) {
    diff_plus = std::max(diff_plus, std::abs(raw[i] - ref[i]));
    diff_minus = std::max(diff_minus, std::abs(-raw[i] - ref[i]));
  }
  if (diff_plus < 1e-12) return +1;
  if (diff_minus < 1e-12) return -1;
  throw CalibrationError("transform evaluator disagrees with the direct sum for both orientations (" +
                         std::to_string(diff_plus) + ", " + std::to_string(diff_minus) + ")");
}

}  // namespace

int perp_orientation() {
  static const int orientation = calibrate_orientation();
  return orientation;
}

FastTendency::FastTendency(int truncation) {
  if (truncation < 1) throw InvalidArgument("FastTendency: truncation must be positive");
  perp_orientation();
  impl_ = std::make_unique<Impl>(truncation);
}

FastTendency::~FastTendency() = default;
FastTendency::FastTendency(FastTendency&&) noexcept = default;
FastTendency& FastTendency::operator=(FastTendency&&) noexcept = default;

Tendency FastTendency::operator()(const SpectralState& state) {
  if (state.truncation() != impl_->n) throw InvalidArgument("FastTendency: truncation mismatch");
  std::vector<double> out = impl_->advection(state);
  if (perp_orientation() < 0) {
    for (double& v : out) v = -v;
  }
  return Tendency(impl_->n, std::move(out));
}

int FastTendency::truncation() const { return impl_->n; }
int FastTendency::grid_x1() const { return impl_->m1; }
int FastTendency::grid_x2() const { return impl_->m2; }

Tendency rhs_fast(const SpectralState& state) {
  thread_local std::map<int, FastTendency> cache;
  auto it = cache.find(state.truncation());
  if (it == cache.end()) it = cache.emplace(state.truncation(), FastTendency(state.truncation())).first;
  return it->second(state);
}

TriadRates triad_conservation_check(const SpectralState& state, const Tendency& rhs) {
  if (state.truncation() != rhs.truncation()) throw InvalidArgument("triad_conservation_check: truncation mismatch");
  const HalfLatticeBox& box = state.box();
  const auto theta = state.half_values();
  const auto rate = rhs.half_values();
  TriadRates out;
  for (std::size_t i = 0; i < box.size(); ++i) {
    if (theta[i] == 0.0 || rate[i] == 0.0) continue;
    const double p = theta[i] * rate[i];
    out.l2_rate += p;
    out.hminus_half_rate += p / norm(box.mode_at(i));
  }
  // Each stored mode stands for the pair {k, -k}.
  out.l2_rate *= 2.0;
  out.hminus_half_rate *= 2.0;
  return out;
}

TriadRates triad_conservation_check(const SpectralState& state) {
  return triad_conservation_check(state, rhs_direct(state));
}

Method parse_method(std::string_view text) {
  if (text == "direct") return Method::Direct;
  if (text == "fast") return Method::Fast;
  throw InvalidArgument("unknown method '" + std::string(text) + "' (expected direct or fast)");
}

std::string_view to_string(Method method) { return method == Method::Direct ? "direct" : "fast"; }

Evaluator make_evaluator(Method method, int truncation) {
  if (method == Method::Direct) return [](const SpectralState& s) { return rhs_direct(s); };
  auto fast = std::make_shared<FastTendency>(truncation);
  return [fast](const SpectralState& s) { return (*fast)(s); };
}

}  // namespace sqg
