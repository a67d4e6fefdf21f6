#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sqg/config.hpp"
#include "sqg/diagnostics.hpp"
#include "sqg/timeloop.hpp"

namespace sqg {

/// Process exit codes shared by the CLI subcommands.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitUsage = 2,
  kExitDriftBreach = 3,
  kExitNonFinite = 4,
  kExitIo = 5,
};

int exit_code_for(RunStatus status);

/// Column order of the run CSV.
inline constexpr const char* kCsvHeader =
    "t,l2,hm12,combined,tail,theta_e,J,sigma,Sigma,W_phi,W_k2,low_mass,h_half,sob_half,sob_s,case";

/// %.17g: enough digits to round-trip every double.
std::string format_real(double value);
void write_csv_row(std::ostream& out, const DiagnosticsRecord& record);

/// What a single run produced, beyond the CSV rows.
struct RunSummary {
  double tau = 0.0;
  RunStatus status = RunStatus::Completed;
  std::string message;
  std::size_t records = 0;
  std::size_t steps = 0;
  int halvings = 0;
  double final_dt = 0.0;
  CaseLabel final_case = CaseLabel::None;
  double initial_J = 0.0;
  double max_J = 0.0;
  double max_J_time = 0.0;
  double initial_sob_s = 0.0;
  double max_sob_s = 0.0;
  double max_l2_drift = 0.0;
  double max_hm_drift = 0.0;
  double max_boundary_mass = 0.0;
  double c_star = 0.0;            ///< even-k2 sites
  double c_star_all_sites = 0.0;  ///< every site, including the indefinite (+-1, 1)
};

/// Runs one trajectory at amplitude `tau` (the rest from `config`) and streams
/// header, rows and a '#' footer to `csv`. `on_record`, when set, sees every
/// record as it is written.
RunSummary run_to_stream(const RunConfig& config, double tau, std::ostream& csv, const DiagnosticsSink& on_record = {});

/// `run` subcommand: writes config.output_path (and a quadform scan next to it
/// when emit_scan is set). Returns an ExitCode.
int run_experiment(const RunConfig& config, std::ostream& log);

/// Output file of sweep member `tau`: "<stem>_tau<tau><ext>" next to the
/// configured output path.
std::string sweep_member_path(const std::string& output_path, double tau);
std::string sweep_summary_path(const std::string& output_path);
std::string scan_output_path(const std::string& output_path);

/// `sweep` subcommand: one CSV per config.sweep_tau value plus a summary table
/// tau,max_J_over_tau2,time_of_max,final_case,status. Runs are independent and
/// may execute concurrently when config.parallel is set.
int run_sweep(const RunConfig& config, std::ostream& log);

/// `scan` subcommand: k1,k2,a,b,c,lambda_min,lambda_min_times_k3 for every
/// site with |k1| <= box, 1 <= k2 <= box, then '#' summary lines with c*.
/// Throws InvalidArgument for box < 4.
void write_quadform_scan(int box, std::ostream& out);
int emit_quadform_scan(int box, const std::string& path, std::ostream& log);

}  // namespace sqg
