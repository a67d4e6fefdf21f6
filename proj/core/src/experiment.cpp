#include "sqg/experiment.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>

#include "sqg/error.hpp"
#include "sqg/quadform.hpp"

namespace sqg {

int exit_code_for(RunStatus status) {
  switch (status) {
    case RunStatus::DriftBreach:
      return kExitDriftBreach;
    case RunStatus::NonFinite:
      return kExitNonFinite;
    case RunStatus::Completed:
      break;
  }
  return kExitOk;
}

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_csv_row(std::ostream& out, const DiagnosticsRecord& r) {
  const double fields[] = {r.t,     r.l2,    r.hm12,  r.combined, r.tail,     r.theta_e, r.J,        r.sigma,
                           r.Sigma, r.W_phi, r.W_k2,  r.low_mass, r.h_half,   r.sob_half, r.sob_s};
  for (double f : fields) out << format_real(f) << ',';
  out << to_string(r.case_label) << '\n';
}

RunSummary run_to_stream(const RunConfig& config, double tau, std::ostream& csv, const DiagnosticsSink& on_record) {
  Params params = config.params;
  params.tau = tau;
  const StepControl control{params.effective_dt(), config.drift_budget, config.halve_on_breach};
  const Evaluator rhs = make_evaluator(config.method, params.N);

  RunSummary summary;
  summary.tau = tau;
  csv << kCsvHeader << '\n';
  const RunOutcome outcome = run(params, control, rhs, [&](const DiagnosticsRecord& r, const SpectralState& s) {
    write_csv_row(csv, r);
    if (summary.records == 0) {
      summary.initial_J = r.J;
      summary.max_J = r.J;
      summary.max_J_time = r.t;
      summary.initial_sob_s = r.sob_s;
    }
    if (r.J > summary.max_J) {
      summary.max_J = r.J;
      summary.max_J_time = r.t;
    }
    summary.max_sob_s = std::max(summary.max_sob_s, r.sob_s);
    summary.max_boundary_mass = std::max(summary.max_boundary_mass, boundary_mass(s));
    summary.final_case = r.case_label;
    ++summary.records;
    if (on_record) on_record(r, s);
  });

  summary.status = outcome.status;
  summary.message = outcome.message;
  summary.steps = outcome.steps;
  summary.halvings = outcome.halvings;
  summary.final_dt = outcome.final_dt;
  summary.max_l2_drift = outcome.max_l2_drift;
  summary.max_hm_drift = outcome.max_hm_drift;
  summary.c_star = scan_domination_constant(config.scan_box, ScanSites::EvenK2);
  summary.c_star_all_sites = scan_domination_constant(config.scan_box, ScanSites::All);

  csv << "# status=" << to_string(summary.status) << '\n';
  if (!summary.message.empty()) csv << "# message=" << summary.message << '\n';
  csv << "# final_case=" << to_string(summary.final_case) << '\n';
  csv << "# max_J=" << format_real(summary.max_J) << '\n';
  csv << "# max_J_time=" << format_real(summary.max_J_time) << '\n';
  csv << "# max_sob_s=" << format_real(summary.max_sob_s) << '\n';
  csv << "# c_star=" << format_real(summary.c_star) << '\n';
  csv << "# c_star_all_sites=" << format_real(summary.c_star_all_sites) << '\n';
  csv << "# max_l2_drift=" << format_real(summary.max_l2_drift) << '\n';
  csv << "# max_hm12_drift=" << format_real(summary.max_hm_drift) << '\n';
  csv << "# max_boundary_mass=" << format_real(summary.max_boundary_mass) << '\n';
  csv << "# steps=" << summary.steps << '\n';
  csv << "# halvings=" << summary.halvings << '\n';
  csv << "# final_dt=" << format_real(summary.final_dt) << '\n';
  return summary;
}

namespace {

std::filesystem::path with_suffix(const std::string& output_path, const std::string& suffix) {
  const std::filesystem::path p(output_path);
  std::string ext = p.extension().string();
  if (ext.empty()) ext = ".csv";
  return p.parent_path() / (p.stem().string() + suffix + ext);
}

void report(std::ostream& log, const RunSummary& s, const std::string& path) {
  log << "tau=" << format_real(s.tau) << " status=" << to_string(s.status) << " records=" << s.records
      << " max_J=" << format_real(s.max_J) << " final_case=" << to_string(s.final_case) << " -> " << path << '\n';
  if (!s.message.empty()) log << "  " << s.message << '\n';
}

}  // namespace

std::string sweep_member_path(const std::string& output_path, double tau) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", tau);
  return with_suffix(output_path, std::string("_tau") + buf).string();
}

std::string sweep_summary_path(const std::string& output_path) { return with_suffix(output_path, "_summary").string(); }

std::string scan_output_path(const std::string& output_path) { return with_suffix(output_path, "_scan").string(); }

int run_experiment(const RunConfig& config, std::ostream& log) {
  config.validate();
  if (config.params.tau_flagged()) {
    log << "warning: tau=" << format_real(config.params.tau)
        << " exceeds 0.05; the theta_e window is not guaranteed\n";
  }
  std::ofstream csv(config.output_path, std::ios::binary);
  if (!csv) {
    log << "error: cannot open '" << config.output_path << "' for writing\n";
    return kExitIo;
  }
  const RunSummary summary = run_to_stream(config, config.params.tau, csv);
  csv.close();
  if (!csv) {
    log << "error: failed writing '" << config.output_path << "'\n";
    return kExitIo;
  }
  report(log, summary, config.output_path);

  if (config.emit_scan) {
    const int code = emit_quadform_scan(config.scan_box, scan_output_path(config.output_path), log);
    if (code != kExitOk) return code;
  }
  return exit_code_for(summary.status);
}

int run_sweep(const RunConfig& config, std::ostream& log) {
  config.validate();
  if (config.sweep_tau.empty()) {
    log << "error: sweep needs sweep_tau (comma-separated list)\n";
    return kExitUsage;
  }

  struct Member {
    RunSummary summary;
    bool io_ok = false;
    std::string path;
  };
  auto run_member = [&config](double tau) {
    Member m;
    m.path = sweep_member_path(config.output_path, tau);
    std::ofstream csv(m.path, std::ios::binary);
    if (!csv) return m;
    m.summary = run_to_stream(config, tau, csv);
    csv.close();
    m.io_ok = static_cast<bool>(csv);
    return m;
  };

  std::vector<Member> members;
  if (config.parallel) {
    std::vector<std::future<Member>> pending;
    for (double tau : config.sweep_tau) pending.push_back(std::async(std::launch::async, run_member, tau));
    for (auto& f : pending) members.push_back(f.get());
  } else {
    for (double tau : config.sweep_tau) members.push_back(run_member(tau));
  }

  int code = kExitOk;
  const std::string summary_path = sweep_summary_path(config.output_path);
  std::ofstream table(summary_path, std::ios::binary);
  if (!table) {
    log << "error: cannot open '" << summary_path << "' for writing\n";
    return kExitIo;
  }
  table << "tau,max_J_over_tau2,time_of_max,final_case,status\n";
  for (const Member& m : members) {
    if (!m.io_ok) {
      log << "error: failed writing '" << m.path << "'\n";
      code = kExitIo;
      continue;
    }
    report(log, m.summary, m.path);
    const double tau = m.summary.tau;
    table << format_real(tau) << ',' << format_real(m.summary.max_J / (tau * tau)) << ','
          << format_real(m.summary.max_J_time) << ',' << to_string(m.summary.final_case) << ','
          << to_string(m.summary.status) << '\n';
    if (code == kExitOk) code = exit_code_for(m.summary.status);
  }
  table.close();
  if (!table) return kExitIo;
  log << "summary -> " << summary_path << '\n';
  return code;
}

void write_quadform_scan(int box, std::ostream& out) {
  if (box < 4) throw InvalidArgument("scan: box must satisfy box >= 4");
  out << "k1,k2,a,b,c,lambda_min,lambda_min_times_k3\n";
  for (const ScanRow& row : quadform_scan(box)) {
    out << row.k.k1 << ',' << row.k.k2 << ',' << format_real(row.form.a) << ',' << format_real(row.form.b) << ','
        << format_real(row.form.c) << ',' << format_real(row.lambda_min) << ','
        << format_real(row.lambda_min_times_k3) << '\n';
  }
  out << "# c_star=" << format_real(scan_domination_constant(box, ScanSites::EvenK2)) << " (k1 != 0, even k2)\n";
  out << "# c_star_all_sites=" << format_real(scan_domination_constant(box, ScanSites::All)) << " (k1 != 0, all k2)\n";
}

int emit_quadform_scan(int box, const std::string& path, std::ostream& log) {
  if (box < 4) {
    log << "error: scan box must satisfy box >= 4\n";
    return kExitUsage;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    log << "error: cannot open '" << path << "' for writing\n";
    return kExitIo;
  }
  write_quadform_scan(box, out);
  out.close();
  if (!out) return kExitIo;
  log << "scan box=" << box << " c_star=" << format_real(scan_domination_constant(box, ScanSites::EvenK2))
      << " c_star_all_sites=" << format_real(scan_domination_constant(box, ScanSites::All)) << " -> " << path << '\n';
  return kExitOk;
}

}  // namespace sqg
