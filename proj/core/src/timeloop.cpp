#include "sqg/timeloop.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sqg/error.hpp"

namespace sqg {

void StepControl::validate() const {
  if (!(dt > 0.0)) throw InvalidArgument("StepControl: dt must satisfy dt > 0");
  if (!(drift_budget > 0.0)) throw InvalidArgument("StepControl: drift_budget must satisfy drift_budget > 0");
}

namespace {

// y + h * k, on raw half-lattice storage.
std::vector<double> axpy(std::span<const double> y, double h, std::span<const double> k) {
  std::vector<double> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + h * k[i];
  return out;
}

void require_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw NonFiniteError("non-finite coefficient during time step");
  }
}

SpectralState stage(const SpectralState& base, double h, const Tendency& k, double time) {
  std::vector<double> values = axpy(base.half_values(), h, k.half_values());
  require_finite(values);
  return SpectralState(base.truncation(), std::move(values), time);
}

}  // namespace

SpectralState step_rk4(const SpectralState& state, double dt, const Evaluator& rhs) {
  if (!(dt > 0.0)) throw InvalidArgument("step_rk4: dt must satisfy dt > 0");
  const double t = state.time();
  const Tendency k1 = rhs(state);
  require_finite(k1.half_values());
  const Tendency k2 = rhs(stage(state, 0.5 * dt, k1, t + 0.5 * dt));
  require_finite(k2.half_values());
  const Tendency k3 = rhs(stage(state, 0.5 * dt, k2, t + 0.5 * dt));
  require_finite(k3.half_values());
  const Tendency k4 = rhs(stage(state, dt, k3, t + dt));
  require_finite(k4.half_values());

  const auto y = state.half_values();
  const auto a = k1.half_values();
  const auto b = k2.half_values();
  const auto c = k3.half_values();
  const auto d = k4.half_values();
  std::vector<double> out(y.size());
  const double w = dt / 6.0;
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + w * (a[i] + 2.0 * b[i] + 2.0 * c[i] + d[i]);
  require_finite(out);
  return SpectralState(state.truncation(), std::move(out), t + dt);
}

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::DriftBreach:
      return "drift_breach";
    case RunStatus::NonFinite:
      return "nonfinite";
    case RunStatus::Completed:
      break;
  }
  return "completed";
}

RunOutcome run(const Params& params, const StepControl& control, const Evaluator& rhs, const DiagnosticsSink& sink) {
  params.validate();
  control.validate();

  SpectralState state = initial_data(params.tau, params.N);
  const double l2_0 = l2_sum(state);
  const double hm_0 = hminus_half_sum(state);

  RunOutcome out{state};
  out.final_dt = control.dt;

  double last_emitted = -1.0;
  auto emit = [&](const SpectralState& s) {
    sink(compute_record(s, params.tau, params.s, rhs), s);
    last_emitted = s.time();
  };
  emit(state);

  double dt = control.dt;
  const double dt_floor = control.dt * std::ldexp(1.0, -kMaxHalvings);
  std::size_t steps_since_sample = 0;
  // Time is accumulated as base_time + count * dt to avoid summing dt
  // repeatedly; the count resets whenever dt changes.
  double base_time = 0.0;
  std::size_t count = 0;

  while (state.time() < params.t_max) {
    double step_dt = dt;
    double next_time = base_time + static_cast<double>(count + 1) * dt;
    const bool last = next_time >= params.t_max;
    if (last) {
      step_dt = params.t_max - state.time();
      next_time = params.t_max;
    }

    SpectralState next{state};
    try {
      next = step_rk4(state, step_dt, rhs).with_time(next_time);
    } catch (const NonFiniteError& e) {
      out.status = RunStatus::NonFinite;
      out.message = e.what();
      break;
    }

    const double l2_drift = std::abs(l2_sum(next) - l2_0) / l2_0;
    const double hm_drift = std::abs(hminus_half_sum(next) - hm_0) / hm_0;
    const double allowed = std::max(control.drift_budget * next_time, kDriftRoundoffFloor);
    if (l2_drift > allowed) {
      if (control.halve_on_breach && dt * 0.5 >= dt_floor) {
        dt *= 0.5;
        base_time = state.time();
        count = 0;
        ++out.halvings;
        continue;
      }
      out.status = RunStatus::DriftBreach;
      out.message = "relative drift " + std::to_string(l2_drift) + " exceeds budget " + std::to_string(allowed) +
                    " at t = " + std::to_string(next_time);
      break;
    }

    state = std::move(next);
    ++count;
    ++out.steps;
    out.max_l2_drift = std::max(out.max_l2_drift, l2_drift);
    out.max_hm_drift = std::max(out.max_hm_drift, hm_drift);

    if (++steps_since_sample == static_cast<std::size_t>(params.sample_every)) {
      steps_since_sample = 0;
      emit(state);
    }
  }

  if (last_emitted != state.time()) emit(state);
  out.final_state = state;
  out.final_dt = dt;
  return out;
}

}  // namespace sqg
