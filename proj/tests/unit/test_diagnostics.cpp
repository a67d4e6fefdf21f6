#include <cmath>

#include "doctest.h"
#include "oracle/brute_force.hpp"
#include "sqg/diagnostics.hpp"
#include "sqg/error.hpp"
#include "sqg/random_state.hpp"

using sqg::ModeIndex;

namespace {

const double kSqrt5 = std::sqrt(5.0);

double relative_gap(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

const sqg::Evaluator kDirect = [](const sqg::SpectralState& s) { return sqg::rhs_direct(s); };

}  // namespace

TEST_CASE("conserved sums") {
  const double tau = 0.07;
  const sqg::SpectralState s = sqg::initial_data(tau, 8);
  CHECK(sqg::l2_sum(s) == doctest::Approx(2.0 + 4.0 * tau * tau).epsilon(1e-15));
  CHECK(sqg::hminus_half_sum(s) == doctest::Approx(2.0 + 2.0 * tau * tau * (0.5 + 1.0 / kSqrt5)).epsilon(1e-15));
  CHECK(sqg::combined_invariant(s) == doctest::Approx((3.0 - 2.0 / kSqrt5) * tau * tau).epsilon(1e-13));

  const sqg::SpectralState zero(8);
  CHECK(sqg::l2_sum(zero) == 0.0);
  CHECK(sqg::hminus_half_sum(zero) == 0.0);
  CHECK(sqg::combined_invariant(zero) == 0.0);

  const sqg::SpectralState g_only = sqg::StateBuilder(8).set(sqg::kPerturbation, tau).build();
  CHECK(sqg::l2_sum(g_only) == doctest::Approx(2.0 * tau * tau));
  CHECK(sqg::hminus_half_sum(g_only) == doctest::Approx(tau * tau));
}

TEST_CASE("sums agree with the full-lattice oracle") {
  const sqg::SpectralState s = sqg::random_state({.truncation = 10, .support_radius = 10, .shear = 1.0}, 17);
  const auto modes = sqg::oracle::expand(s);
  auto r = [](long a, long b) { return std::hypot(static_cast<double>(a), static_cast<double>(b)); };
  CHECK(sqg::l2_sum(s) == doctest::Approx(sqg::oracle::weighted_square_sum(modes, [](long, long) { return 1.0; })).epsilon(1e-14));
  CHECK(sqg::hminus_half_sum(s) ==
        doctest::Approx(sqg::oracle::weighted_square_sum(modes, [&](long a, long b) { return 1.0 / r(a, b); })).epsilon(1e-14));
  CHECK(sqg::sobolev_sum(s, 11.0) ==
        doctest::Approx(sqg::oracle::weighted_square_sum(modes, [&](long a, long b) { return std::pow(r(a, b), 22.0); })).epsilon(1e-12));
}

TEST_CASE("tail mass and the theta_e windows") {
  const double tau = 0.05;
  const sqg::SpectralState s = sqg::initial_data(tau, 8);
  CHECK(sqg::tail_mass(s) == doctest::Approx(4.0 * tau * tau).epsilon(1e-15));
  CHECK(sqg::theta_e_window_ok(s));
  CHECK(sqg::theta_e_tight_window_ok(s, tau));
  const sqg::SpectralState weak = sqg::StateBuilder(8).set(sqg::kShear, 0.4).build();
  CHECK_FALSE(sqg::theta_e_window_ok(weak));
  CHECK_FALSE(sqg::theta_e_tight_window_ok(weak, tau));
}

TEST_CASE("J functional") {
  const double tau = 0.03;
  // Only the pair (g, g + e) contributes, with Phi(g) = 1/2.
  CHECK(sqg::j_functional(sqg::initial_data(tau, 8)) == doctest::Approx(0.5 * tau * tau).epsilon(1e-15));
  CHECK(sqg::j_functional(sqg::SpectralState(8)) == 0.0);
  CHECK(sqg::j_functional(sqg::StateBuilder(8).set({3, 4}, 0.9).build()) == 0.0);
  // Pair across the k2 = 0 row is read through evenness: k = (-2, 2), k + e = (-1, 2).
  const sqg::SpectralState pair = sqg::StateBuilder(8).set({-2, 2}, 0.5).set({1, -2}, 0.25).build();
  CHECK(sqg::j_functional(pair) == doctest::Approx(-1.5 * 0.5 * 0.25));
}

TEST_CASE("dJ/dt splits into sigma + Sigma") {
  SUBCASE("initial data") {
    const sqg::SpectralState s = sqg::initial_data(0.1, 8);
    const sqg::ShearSplit split = sqg::sigma_and_Sigma(s);
    const double chain = sqg::j_rate(s, sqg::rhs_direct(s));
    CHECK(relative_gap(split.sigma + split.Sigma, chain) < 1e-12);
    CHECK(split.Sigma > 0.0);
  }
  SUBCASE("zero state") {
    const sqg::ShearSplit split = sqg::sigma_and_Sigma(sqg::SpectralState(8));
    CHECK(split.sigma == 0.0);
    CHECK(split.Sigma == 0.0);
  }
  SUBCASE("random states with margin") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const sqg::SpectralState s = sqg::random_state({.truncation = 16, .support_radius = 12, .shear = 1.0}, 300 + seed);
      const sqg::ShearSplit split = sqg::sigma_and_Sigma(s);
      REQUIRE(relative_gap(split.sigma + split.Sigma, sqg::j_rate(s, sqg::rhs_direct(s))) < 1e-10);
      const sqg::ShearSplit box = sqg::shear_split(s, kDirect);
      CHECK(relative_gap(box.sigma, split.sigma) < 1e-12);
      CHECK(relative_gap(box.Sigma, split.Sigma) < 1e-12);
    }
  }
  SUBCASE("the Galerkin split needs no margin") {
    const sqg::SpectralState s = sqg::random_state({.truncation = 10, .support_radius = 10, .shear = 1.0}, 77);
    CHECK_THROWS_AS(sqg::sigma_and_Sigma(s), sqg::MarginError);
    const sqg::ShearSplit box = sqg::shear_split(s, kDirect);
    CHECK(relative_gap(box.sigma + box.Sigma, sqg::j_rate(s, sqg::rhs_direct(s))) < 1e-12);
  }
}

TEST_CASE("regrouped Sigma equals Sigma") {
  const sqg::SpectralState init = sqg::initial_data(0.1, 8);
  CHECK(relative_gap(sqg::Sigma_rewritten(init), sqg::sigma_and_Sigma(init).Sigma) < 1e-12);
  CHECK(sqg::Sigma_rewritten(sqg::SpectralState(8)) == 0.0);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const sqg::SpectralState s = sqg::random_state({.truncation = 16, .support_radius = 12}, 500 + seed);
    REQUIRE(relative_gap(sqg::Sigma_rewritten(s), sqg::sigma_and_Sigma(s).Sigma) < 1e-10);
  }
  CHECK_THROWS_AS(sqg::Sigma_rewritten(sqg::random_state({.truncation = 8, .support_radius = 7}, 1)), sqg::MarginError);
}

TEST_CASE("Sigma is nonnegative when theta_e is") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const double shear = 0.1 + 0.03 * static_cast<double>(seed);
    const sqg::SpectralState s =
        sqg::random_state({.truncation = 16, .support_radius = 14, .shear = shear}, 700 + seed);
    REQUIRE(sqg::sigma_and_Sigma(s).Sigma >= 0.0);
  }
}

TEST_CASE("sigma bound") {
  const sqg::SigmaBound init = sqg::sigma_bound_check(sqg::initial_data(0.1, 12), kDirect);
  CHECK(init.holds);
  const sqg::SigmaBound zero = sqg::sigma_bound_check(sqg::SpectralState(8), kDirect);
  CHECK(zero.holds);
  CHECK(zero.sigma == 0.0);
  CHECK(zero.bound == 0.0);
}

TEST_CASE("case classification") {
  const double tau = 0.01;
  const sqg::CaseThresholds th = sqg::CaseThresholds::for_tau(tau);
  CHECK(th.a_threshold == doctest::Approx(0.1));
  CHECK(th.b_threshold == doctest::Approx(std::pow(tau, 2.5)));

  const sqg::DiagnosticsRecord init = sqg::compute_record(sqg::initial_data(tau, 8), tau, 11.0, kDirect);
  // g contributes 2 * 1/2 * tau, g + e contributes sqrt5 * 3/2 * tau.
  CHECK(init.W_phi == doctest::Approx(tau * (1.0 + 1.5 * kSqrt5)).epsilon(1e-14));
  // Low modes hold tau^2 (1/8 + 5^-3/2) of mass, above tau^2.5 for tau = 0.01.
  CHECK(init.low_mass == doctest::Approx(tau * tau * (0.125 + std::pow(5.0, -1.5))).epsilon(1e-14));
  CHECK(init.case_label == sqg::CaseLabel::B);

  sqg::DiagnosticsRecord r;
  r.W_phi = 2.0 * std::sqrt(tau);
  CHECK(sqg::classify_case(r, th) == sqg::CaseLabel::A);
  r.W_phi = 0.0;
  r.low_mass = 2.0 * std::pow(tau, 2.5);
  CHECK(sqg::classify_case(r, th) == sqg::CaseLabel::B);
  r.low_mass = 0.0;
  CHECK(sqg::classify_case(r, th) == sqg::CaseLabel::None);
  CHECK(sqg::to_string(sqg::CaseLabel::A) == "A");
  CHECK(sqg::to_string(sqg::CaseLabel::None) == "NONE");
}

TEST_CASE("Sobolev sums") {
  const double tau = 0.02;
  const sqg::SpectralState s = sqg::initial_data(tau, 8);
  for (double order : {1.0, 10.5, 11.0}) {
    const double expected = 2.0 + 2.0 * tau * tau * (std::pow(4.0, order) + std::pow(5.0, order));
    CHECK(sqg::sobolev_sum(s, order) == doctest::Approx(expected).epsilon(1e-14));
  }
  CHECK(sqg::sobolev_sum(sqg::SpectralState(8), 11.0) == 0.0);
  double previous = 0.0;
  for (double order = 0.0; order <= 12.0; order += 0.5) {
    const double v = sqg::sobolev_sum(s, order);
    CHECK(v > previous);
    previous = v;
  }
}

TEST_CASE("interpolation inequalities") {
  const sqg::InterpolationCheck init = sqg::interpolation_checks(sqg::initial_data(0.1, 8));
  CHECK(init.case_a_holds);
  CHECK(init.case_b_holds);

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const sqg::SpectralState s = sqg::random_state({.truncation = 12, .support_radius = 12, .decay = 0.5}, 900 + seed);
    const sqg::InterpolationCheck c = sqg::interpolation_checks(s);
    REQUIRE(c.case_a_holds);
    REQUIRE(c.case_b_holds);
  }

  const sqg::SpectralState single = sqg::StateBuilder(16).set({5, 6}, 0.3).build();
  const sqg::InterpolationCheck c = sqg::interpolation_checks(single);
  CHECK(relative_gap(c.case_b_lhs, c.case_b_rhs) < 1e-12);
  CHECK(c.case_b_holds);
}

TEST_CASE("records are internally consistent") {
  const sqg::SpectralState s = sqg::random_state({.truncation = 12, .support_radius = 12, .shear = 1.0}, 4);
  const sqg::DiagnosticsRecord r = sqg::compute_record(s, 0.05, 11.0, kDirect);
  CHECK(r.combined == r.l2 - r.hm12);
  CHECK(r.combined == doctest::Approx(sqg::combined_invariant(s)).epsilon(1e-12));
  CHECK(r.tail >= 0.0);
  CHECK(r.theta_e == 1.0);
  CHECK(r.sob_half == doctest::Approx(sqg::sobolev_sum(s, 10.5)));
  CHECK(sqg::boundary_mass(sqg::initial_data(0.1, 8)) == 0.0);
}
