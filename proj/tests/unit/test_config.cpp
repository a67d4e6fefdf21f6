#include <string>

#include "doctest.h"
#include "sqg/config.hpp"
#include "sqg/error.hpp"

namespace {

std::string error_of(std::string_view text) {
  try {
    sqg::parse_config(text);
  } catch (const sqg::ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("empty input gives the documented defaults") {
  const sqg::RunConfig c = sqg::parse_config("");
  CHECK(c.params.tau == 0.05);
  CHECK(c.params.N == 64);
  CHECK(c.params.effective_dt() == 0.25 / 64);
  CHECK(c.params.t_max == 100.0);
  CHECK(c.params.s == 11.0);
  CHECK(c.params.sample_every == 16);
  CHECK(c.method == sqg::Method::Fast);
  CHECK(c.sweep_tau.empty());
}

TEST_CASE("overrides touch only the named keys") {
  const sqg::RunConfig c = sqg::parse_config("tau=0.01\nN=128");
  CHECK(c.params.tau == 0.01);
  CHECK(c.params.N == 128);
  CHECK(c.params.effective_dt() == 0.25 / 128);
  CHECK(c.params.t_max == 100.0);
  CHECK(c.params.sample_every == 16);
}

TEST_CASE("comments, whitespace and lists") {
  const sqg::RunConfig c = sqg::parse_config(
      "# experiment\n"
      "  method = direct   # oracle path\n"
      "\n"
      "sweep_tau = 0.1, 0.05,0.02\n"
      "halve_on_breach=false\n"
      "dt=0.01\n");
  CHECK(c.method == sqg::Method::Direct);
  REQUIRE(c.sweep_tau.size() == 3);
  CHECK(c.sweep_tau[2] == 0.02);
  CHECK_FALSE(c.halve_on_breach);
  CHECK(c.params.effective_dt() == 0.01);
}

TEST_CASE("errors name the line and the constraint") {
  const std::string negative = error_of("tau=-1");
  CHECK(negative.find("line 1") != std::string::npos);
  CHECK(negative.find("tau > 0") != std::string::npos);

  CHECK(error_of("N=16\nfoo=3").find("line 2: unknown key 'foo'") != std::string::npos);
  CHECK(error_of("N=sixteen").find("cannot parse") != std::string::npos);
  CHECK(error_of("N=4").find("N") != std::string::npos);
  CHECK(error_of("justtext").find("expected key=value") != std::string::npos);
  CHECK(error_of("method=magic").find("method") != std::string::npos);
  CHECK(error_of("sweep_tau=0.1,-0.2").find("sweep") != std::string::npos);
  CHECK(error_of("emit_scan=maybe").find("boolean") != std::string::npos);
}

TEST_CASE("flags override file settings") {
  sqg::RunConfig c;
  sqg::read_settings("tau=0.02\nN=32", c);
  sqg::apply_setting(c, "tau", "0.03", "flag --tau");
  CHECK_NOTHROW(c.validate());
  CHECK(c.params.tau == 0.03);
  CHECK(c.params.N == 32);
  try {
    sqg::apply_setting(c, "t_max", "-3", "flag --t_max");
    FAIL("expected a ConfigError");
  } catch (const sqg::ConfigError& e) {
    CHECK(std::string(e.what()).find("flag --t_max") != std::string::npos);
  }
}
