#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sqg/state.hpp"
#include "sqg/tendency.hpp"

namespace sqg {

/// Everything an experiment needs. Text form is flat `key=value` lines; the
/// same keys work as `--key value` flags on the command line.
///
/// Keys: tau, N, dt, t_max, s, sample_every, method, output, sweep_tau,
/// seed, emit_scan, scan_box, drift_budget, halve_on_breach, parallel.
struct RunConfig {
  Params params;
  Method method = Method::Fast;
  std::string output_path = "sqg_run.csv";
  std::vector<double> sweep_tau;
  std::uint64_t seed = 1;
  bool emit_scan = false;
  int scan_box = 128;
  double drift_budget = 1e-9;
  bool halve_on_breach = true;
  bool parallel = false;

  /// Throws ConfigError naming the violated constraint.
  void validate() const;
};

/// Applies one setting. `where` names the source (e.g. "line 3", "flag --tau")
/// and is prefixed to every error message.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value, std::string_view where);

/// Applies key=value text to `config` without validating, so later flag
/// overrides can still fix a value. Blank lines and '#' comments are ignored.
void read_settings(std::string_view text, RunConfig& config);

/// read_settings on top of the defaults, then validate.
RunConfig parse_config(std::string_view text);

/// File contents for read_settings; throws ConfigError if unreadable.
std::string read_config_file(const std::string& path);

}  // namespace sqg
