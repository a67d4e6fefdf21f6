#pragma once

#include <cstddef>
#include <functional>
#include <string>

#include "sqg/diagnostics.hpp"
#include "sqg/state.hpp"
#include "sqg/tendency.hpp"

namespace sqg {

struct StepControl {
  double dt = 0.0;
  /// Allowed relative drift of sum theta_k^2 per unit time.
  double drift_budget = 1e-9;
  bool halve_on_breach = true;

  void validate() const;
};

/// Relative drift below this is treated as rounding in the invariant sums and
/// never triggers a breach, even at t close to 0.
inline constexpr double kDriftRoundoffFloor = 1e-14;
/// dt is never halved below base_dt * 2^-20.
inline constexpr int kMaxHalvings = 20;

/// Classical four-stage Runge-Kutta step. Throws NonFiniteError if any stage
/// produces NaN or infinity.
SpectralState step_rk4(const SpectralState& state, double dt, const Evaluator& rhs);

enum class RunStatus { Completed, DriftBreach, NonFinite };
std::string_view to_string(RunStatus status);

struct RunOutcome {
  SpectralState final_state;
  RunStatus status = RunStatus::Completed;
  std::string message;
  std::size_t steps = 0;
  int halvings = 0;
  double final_dt = 0.0;
  double max_l2_drift = 0.0;  ///< max relative drift of sum theta^2 over the run
  double max_hm_drift = 0.0;  ///< max relative drift of sum theta^2 / |k|
};

using DiagnosticsSink = std::function<void(const DiagnosticsRecord&, const SpectralState&)>;

/// Integrates initial_data(params.tau) to params.t_max. A record goes to the
/// sink at t = 0, every params.sample_every steps, and at the final time.
///
/// After every step the relative drift of sum theta^2 is compared against
/// drift_budget * t. On breach the step is retried with dt halved, or the run
/// stops with DriftBreach if halving is disabled or exhausted. A non-finite
/// step stops the run with NonFinite. In both failure cases the last good
/// state is reported to the sink (if it was not already) and returned.
RunOutcome run(const Params& params, const StepControl& control, const Evaluator& rhs, const DiagnosticsSink& sink);

}  // namespace sqg
