#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "fasim/config.hpp"
#include "fasim/error.hpp"
#include "fasim/sweep.hpp"

using namespace fasim;

namespace {

std::string key_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "";
}

}  // namespace

TEST(Config, DefaultsAreReferenceScenario) {
  const auto c = parse_config("");
  EXPECT_EQ(c.array.num_fas, 4);
  EXPECT_EQ(c.array.ports_per_fa, 15);
  EXPECT_EQ(c.array.skipped_ports, 1);
  EXPECT_DOUBLE_EQ(c.network.bs_density, 5e-5);
  EXPECT_DOUBLE_EQ(c.network.path_loss_exponent, 4.0);
  EXPECT_DOUBLE_EQ(c.network.tx_power_w, 1.0);
  EXPECT_DOUBLE_EQ(c.target_rate, 1.0);
}

TEST(Config, ParsesCommentsAndWhitespace) {
  const auto c = parse_config("# header\n  num_fas = 3   # inline\n\nbs_density=1e-4\r\nmc_fades = shared\n");
  EXPECT_EQ(c.array.num_fas, 3);
  EXPECT_DOUBLE_EQ(c.network.bs_density, 1e-4);
  EXPECT_EQ(c.plan.fades, FadeModel::shared);
}

TEST(Config, ErrorsNameTheKey) {
  EXPECT_EQ(key_of("colour = red\n"), "colour");
  EXPECT_EQ(key_of("num_fas = 2\nnum_fas = 3\n"), "num_fas");
  EXPECT_EQ(key_of("bs_density = lots\n"), "bs_density");
  EXPECT_EQ(key_of("num_fas = 2.5\n"), "num_fas");
  EXPECT_EQ(key_of("path_loss_exponent = 2\n"), "path_loss_exponent");
  EXPECT_EQ(key_of("skipped_ports = 15\n"), "skipped_ports");
  EXPECT_EQ(key_of("mc_estimate = magic\n"), "mc_estimate");
  EXPECT_EQ(key_of("estimation_fraction = 1\n"), "estimation_fraction");
  EXPECT_EQ(key_of("just words\n"), "line 1");
  EXPECT_EQ(key_of("num_fas = 8\nskipped_ports = 0\nvoltage_difference = 1\n"), "frame");
}

TEST(Config, FormatRoundTrips) {
  auto c = parse_config("num_fas = 3\nbs_density = 1.2345678901234567e-5\nmc_sinr = realized\nseed = 99\n");
  const auto again = parse_config(format_config(c));
  EXPECT_EQ(format_config(again), format_config(c));
  EXPECT_EQ(again.plan.seed, 99u);
  EXPECT_EQ(again.network.bs_density, c.network.bs_density);
}

TEST(Config, DbmConversion) {
  EXPECT_DOUBLE_EQ(dbm_to_watts(30.0), 1.0);
  EXPECT_NEAR(dbm_to_watts(0.0), 1e-3, 1e-18);
  EXPECT_NEAR(dbm_to_watts(60.0), 1e3, 1e-9);
}

TEST(Config, SettingOverridesAndScenario) {
  auto c = parse_config("");
  apply_setting(c, "tx_power_dbm", "40");
  const auto sc = to_scenario(c);
  EXPECT_NEAR(sc.network.tx_power_w, 10.0, 1e-12);
  EXPECT_THROW(apply_setting(c, "nope", "1"), ConfigError);
}

TEST(Sweep, GridParsing) {
  const auto g = parse_grid("0:60:13");
  ASSERT_EQ(g.size(), 13u);
  EXPECT_DOUBLE_EQ(g.front(), 0.0);
  EXPECT_DOUBLE_EQ(g.back(), 60.0);
  EXPECT_DOUBLE_EQ(g[1], 5.0);
  const auto l = parse_grid("1e-6:1e-3:4:log");
  EXPECT_NEAR(l[1], 1e-5, 1e-18);
  EXPECT_NEAR(l[3], 1e-3, 1e-15);
  EXPECT_EQ(parse_grid("7:7:1"), std::vector<double>{7.0});
  EXPECT_THROW(parse_grid("0:1"), ConfigError);
  EXPECT_THROW(parse_grid("a:1:3"), ConfigError);
  EXPECT_THROW(parse_grid("0:1:0"), ConfigError);
  EXPECT_THROW(parse_grid("0:1:3:log"), ConfigError);
}

TEST(Sweep, NamesAndEngines) {
  EXPECT_EQ(parse_sweep_parameter("bs-density"), SweepParameter::bs_density);
  EXPECT_EQ(sweep_parameter_name(SweepParameter::target_variance), "target-variance");
  EXPECT_THROW(parse_sweep_parameter("colour"), ConfigError);
  const auto e = parse_engines("analytic,mc");
  EXPECT_TRUE(e.analytic);
  EXPECT_FALSE(e.bounds);
  EXPECT_TRUE(e.monte_carlo);
  EXPECT_THROW(parse_engines("analytic,guess"), ConfigError);
}

TEST(Sweep, SpecValidation) {
  SweepSpec s;
  s.grid = {1.0, 2.0};
  EXPECT_NO_THROW(s.validate());
  s.engines.bounds = true;
  EXPECT_THROW(s.validate(), ConfigError);
  s.interference_limited = true;
  EXPECT_NO_THROW(s.validate());
  s.grid = {2.0, 1.0};
  EXPECT_THROW(s.validate(), ConfigError);
  s = {};
  s.parameter = SweepParameter::num_fas;
  s.grid = {1.0, 2.5};
  EXPECT_THROW(s.validate(), ConfigError);
}

TEST(Sweep, PresetsExist) {
  for (const char* name : {"fig3", "fig4", "fig5", "fig6", "fig7"}) {
    const auto p = figure_preset(name);
    EXPECT_NO_THROW(p.spec.validate()) << name;
  }
  EXPECT_THROW(figure_preset("fig9"), ConfigError);
  EXPECT_EQ(figure_preset("fig3").spec.grid.size(), 13u);
}

TEST(Sweep, CsvShapeAndFailures) {
  auto base = parse_config("num_fas = 2\nports_per_fa = 5\ntrials = 50\n");
  SweepSpec s;
  s.parameter = SweepParameter::ports_per_fa;
  s.grid = {1.0, 5.0};
  s.engines = {true, false, true};
  s.modes = AnalyticModes::common_gamma;
  std::ostringstream csv, log;
  const int failures = run_sweep(s, base, csv, log);
  EXPECT_EQ(failures, 1);  // one port cannot host the array
  std::istringstream in(csv.str());
  std::string header, bad, good;
  std::getline(in, header);
  std::getline(in, bad);
  std::getline(in, good);
  EXPECT_EQ(header, kOutageHeader);
  EXPECT_EQ(bad.rfind("1,nan,,,,nan,nan,", 0), 0u) << bad;
  EXPECT_EQ(good.rfind("5,", 0), 0u);
  EXPECT_NE(log.str().find("error"), std::string::npos);
}

TEST(Sweep, SkipSweepHeader) {
  const auto base = parse_config("");
  SweepSpec s;
  s.parameter = SweepParameter::target_variance;
  s.grid = {0.3, 0.6};
  s.engines = {true, false, false};
  std::ostringstream csv, log;
  EXPECT_EQ(run_sweep(s, base, csv, log), 0);
  EXPECT_EQ(csv.str().rfind(std::string(kSkipHeader) + "\n0.3,", 0), 0u);
}
