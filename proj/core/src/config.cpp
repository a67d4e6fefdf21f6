#include "sqg/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sqg/error.hpp"

namespace sqg {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string context(std::string_view where, std::string_view key) {
  return std::string(where) + ": " + std::string(key);
}

double to_real(std::string_view value, std::string_view where, std::string_view key) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError(context(where, key) + ": cannot parse '" + std::string(value) + "' as a real number");
  }
  return out;
}

long long to_integer(std::string_view value, std::string_view where, std::string_view key) {
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError(context(where, key) + ": cannot parse '" + std::string(value) + "' as an integer");
  }
  return out;
}

bool to_bool(std::string_view value, std::string_view where, std::string_view key) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw ConfigError(context(where, key) + ": cannot parse '" + std::string(value) + "' as a boolean");
}

void require(bool ok, std::string_view where, std::string_view key, std::string_view constraint) {
  if (!ok) throw ConfigError(context(where, key) + ": constraint " + std::string(constraint) + " violated");
}

}  // namespace

void RunConfig::validate() const {
  try {
    params.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  if (output_path.empty()) throw ConfigError("output must be a non-empty path");
  for (double tau : sweep_tau) {
    if (!(tau > 0.0)) throw ConfigError("sweep_tau values must satisfy tau > 0");
  }
  if (scan_box < 4) throw ConfigError("scan_box must satisfy scan_box >= 4");
  if (!(drift_budget > 0.0)) throw ConfigError("drift_budget must satisfy drift_budget > 0");
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view raw, std::string_view where) {
  const std::string_view value = trim(raw);
  if (key == "tau") {
    c.params.tau = to_real(value, where, key);
    require(c.params.tau > 0.0, where, key, "tau > 0");
  } else if (key == "N") {
    const long long n = to_integer(value, where, key);
    require(n >= 8 && n <= (1 << 15), where, key, "8 <= N <= 32768");
    c.params.N = static_cast<int>(n);
  } else if (key == "dt") {
    c.params.dt = to_real(value, where, key);
    require(c.params.dt > 0.0, where, key, "dt > 0");
  } else if (key == "t_max") {
    c.params.t_max = to_real(value, where, key);
    require(c.params.t_max >= 0.0, where, key, "t_max >= 0");
  } else if (key == "s") {
    c.params.s = to_real(value, where, key);
    require(std::isfinite(c.params.s), where, key, "s finite");
  } else if (key == "sample_every") {
    const long long every = to_integer(value, where, key);
    require(every >= 1 && every <= (1 << 30), where, key, "sample_every >= 1");
    c.params.sample_every = static_cast<int>(every);
  } else if (key == "method") {
    try {
      c.method = parse_method(value);
    } catch (const InvalidArgument& e) {
      throw ConfigError(context(where, key) + ": " + e.what());
    }
  } else if (key == "output") {
    require(!value.empty(), where, key, "non-empty path");
    c.output_path = std::string(value);
  } else if (key == "sweep_tau") {
    c.sweep_tau.clear();
    std::string_view rest = value;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      c.sweep_tau.push_back(to_real(trim(rest.substr(0, comma)), where, key));
      require(c.sweep_tau.back() > 0.0, where, key, "tau > 0 for every sweep value");
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  } else if (key == "seed") {
    const long long seed = to_integer(value, where, key);
    require(seed >= 0, where, key, "seed >= 0");
    c.seed = static_cast<std::uint64_t>(seed);
  } else if (key == "emit_scan") {
    c.emit_scan = to_bool(value, where, key);
  } else if (key == "scan_box") {
    const long long box = to_integer(value, where, key);
    require(box >= 4 && box <= (1 << 15), where, key, "4 <= scan_box <= 32768");
    c.scan_box = static_cast<int>(box);
  } else if (key == "drift_budget") {
    c.drift_budget = to_real(value, where, key);
    require(c.drift_budget > 0.0, where, key, "drift_budget > 0");
  } else if (key == "halve_on_breach") {
    c.halve_on_breach = to_bool(value, where, key);
  } else if (key == "parallel") {
    c.parallel = to_bool(value, where, key);
  } else {
    throw ConfigError(std::string(where) + ": unknown key '" + std::string(key) + "'");
  }
}

void read_settings(std::string_view text, RunConfig& config) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::string where = "line " + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + ": expected key=value, got '" + std::string(line) + "'");
    apply_setting(config, trim(line.substr(0, eq)), line.substr(eq + 1), where);
  }
}

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  read_settings(text, config);
  config.validate();
  return config;
}

std::string read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace sqg
