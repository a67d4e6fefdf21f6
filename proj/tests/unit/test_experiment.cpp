#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "sqg/error.hpp"
#include "sqg/experiment.hpp"

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<double> fields_of(const std::string& row) {
  std::vector<double> out;
  std::istringstream in(row);
  for (std::string f; std::getline(in, f, ',');) {
    if (f == "NONE" || f == "A" || f == "B") break;
    out.push_back(std::stod(f));
  }
  return out;
}

sqg::RunConfig small_config() {
  sqg::RunConfig c = sqg::parse_config("N=16\nt_max=0.5\nsample_every=4\ntau=0.05");
  c.scan_box = 8;
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("format_real round-trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) CHECK(std::stod(sqg::format_real(v)) == v);
}

TEST_CASE("t_max = 0 gives the header, one row and the footer") {
  sqg::RunConfig c = small_config();
  c.params.t_max = 0.0;
  std::ostringstream out;
  const sqg::RunSummary s = sqg::run_to_stream(c, c.params.tau, out);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() >= 3);
  CHECK(lines[0] == sqg::kCsvHeader);
  CHECK(lines[1].rfind("0,", 0) == 0);
  CHECK(lines[2] == "# status=completed");
  CHECK(s.records == 1);
  CHECK(s.steps == 0);
}

TEST_CASE("csv rows carry consistent columns") {
  const sqg::RunConfig c = small_config();
  std::ostringstream out;
  const sqg::RunSummary s = sqg::run_to_stream(c, c.params.tau, out);
  CHECK(s.status == sqg::RunStatus::Completed);
  const auto lines = lines_of(out.str());
  std::size_t rows = 0;
  double last_t = -1.0;
  for (std::size_t i = 1; i < lines.size() && lines[i][0] != '#'; ++i) {
    const std::vector<double> f = fields_of(lines[i]);
    REQUIRE(f.size() == 15);
    CHECK(f[0] > last_t);
    last_t = f[0];
    CHECK(f[3] == f[1] - f[2]);  // combined = l2 - hm12, bit for bit
    ++rows;
  }
  CHECK(rows == s.records);
  CHECK(last_t == 0.5);
  CHECK(s.c_star == doctest::Approx(1.5676021952597037).epsilon(1e-13));
  CHECK(s.c_star_all_sites < 0.0);
}

TEST_CASE("identical inputs give identical bytes") {
  const sqg::RunConfig c = small_config();
  std::ostringstream a;
  std::ostringstream b;
  sqg::run_to_stream(c, c.params.tau, a);
  sqg::run_to_stream(c, c.params.tau, b);
  CHECK(a.str() == b.str());
}

TEST_CASE("quadform scan output") {
  std::ostringstream out;
  sqg::write_quadform_scan(4, out);
  const auto lines = lines_of(out.str());
  std::size_t rows = 0;
  for (const std::string& l : lines)
    if (!l.empty() && l[0] != '#' && l[0] != 'k') ++rows;
  CHECK(rows == 9u * 4u);
  CHECK(lines[0] == "k1,k2,a,b,c,lambda_min,lambda_min_times_k3");
  CHECK_THROWS_AS(sqg::write_quadform_scan(3, out), sqg::InvalidArgument);
  std::ostringstream log;
  CHECK(sqg::emit_quadform_scan(2, "unused.csv", log) == sqg::kExitUsage);
}

TEST_CASE("output paths") {
  CHECK(sqg::sweep_member_path("out/run.csv", 0.05) == "out/run_tau0.05.csv");
  CHECK(sqg::sweep_summary_path("run.csv") == "run_summary.csv");
  CHECK(sqg::scan_output_path("run") == "run_scan.csv");
}

TEST_CASE("sweep writes one file per tau and a summary") {
  const auto dir = std::filesystem::temp_directory_path() / "sqg_test_sweep";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  sqg::RunConfig c = small_config();
  c.output_path = (dir / "sw.csv").string();
  c.sweep_tau = {0.05, 0.02};
  std::ostringstream log;
  CHECK(sqg::run_sweep(c, log) == sqg::kExitOk);
  CHECK(std::filesystem::exists(dir / "sw_tau0.05.csv"));
  CHECK(std::filesystem::exists(dir / "sw_tau0.02.csv"));
  const auto summary = lines_of(slurp(dir / "sw_summary.csv"));
  REQUIRE(summary.size() == 3);
  CHECK(summary[0] == "tau,max_J_over_tau2,time_of_max,final_case,status");
  CHECK(std::stod(summary[1].substr(0, summary[1].find(','))) == 0.05);
  CHECK(summary[2].find("completed") != std::string::npos);

  // Concurrent members produce the same files.
  const std::string serial = slurp(dir / "sw_tau0.02.csv");
  c.parallel = true;
  CHECK(sqg::run_sweep(c, log) == sqg::kExitOk);
  CHECK(slurp(dir / "sw_tau0.02.csv") == serial);

  c.sweep_tau.clear();
  CHECK(sqg::run_sweep(c, log) == sqg::kExitUsage);
  std::filesystem::remove_all(dir);
}

TEST_CASE("unwritable output path") {
  sqg::RunConfig c = small_config();
  c.output_path = "/nonexistent-dir/x/run.csv";
  std::ostringstream log;
  CHECK(sqg::run_experiment(c, log) == sqg::kExitIo);
}
