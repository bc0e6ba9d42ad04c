// Command-line driver: loads a config, runs one sweep, writes CSV.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "fasim/config.hpp"
#include "fasim/error.hpp"
#include "fasim/sweep.hpp"

namespace {

std::pair<std::string, std::string> split_pair(const std::string& text, const char* flag) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0)
    throw fasim::ConfigError(flag, "expected KEY=VALUE, got '" + text + "'");
  return {text.substr(0, eq), text.substr(eq + 1)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fluid-antenna outage simulator and analytics"};

  std::string config_path;
  std::string preset;
  std::string sweep;
  std::string engines;
  std::string out_path = "-";
  std::string mode = "both";
  std::vector<std::string> settings;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  bool printed = false;
  bool interference_limited = false;

  app.add_option("--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);
  app.add_option("--preset", preset, "figure preset: fig3, fig4, fig5, fig6, fig7");
  app.add_option("--sweep", sweep, "PARAM=start:stop:steps[:log]");
  app.add_option("--engines", engines, "comma list of analytic, bounds, monte-carlo");
  auto* trials_opt = app.add_option("--trials", trials, "Monte Carlo trials per grid point");
  auto* seed_opt = app.add_option("--seed", seed, "base seed of the trial streams");
  app.add_option("--out", out_path, "CSV output path, - for stdout");
  app.add_flag("--compat-printed-forms", printed, "evaluate the typeset threshold and bound forms");
  app.add_option("--mode", mode, "analytic columns to fill")
      ->check(CLI::IsMember({"both", "common-gamma", "per-port-gamma"}));
  app.add_option("--set", settings, "override one config key, KEY=VALUE (repeatable)");
  app.add_flag("--interference-limited", interference_limited,
               "enable the interference-limited bounds engine");

  CLI11_PARSE(app, argc, argv);

  try {
    if (preset.empty() && sweep.empty()) throw fasim::ConfigError("sweep", "give --preset or --sweep");

    fasim::SystemConfig cfg = config_path.empty() ? fasim::parse_config("") : fasim::load_config(config_path);

    fasim::SweepSpec spec;
    if (!preset.empty()) {
      const auto p = fasim::figure_preset(preset);
      spec = p.spec;
      for (const auto& [k, v] : p.settings) fasim::apply_setting(cfg, k, v);
    }
    if (!sweep.empty()) {
      const auto [param, grid] = split_pair(sweep, "sweep");
      spec.parameter = fasim::parse_sweep_parameter(param);
      spec.grid = fasim::parse_grid(grid);
    }
    if (!engines.empty()) spec.engines = fasim::parse_engines(engines);
    if (interference_limited) spec.interference_limited = true;
    spec.forms = printed ? fasim::Forms::printed : fasim::Forms::derived;
    spec.modes = mode == "common-gamma"     ? fasim::AnalyticModes::common_gamma
                 : mode == "per-port-gamma" ? fasim::AnalyticModes::per_port_gamma
                                            : fasim::AnalyticModes::both;
    spec.output_path = out_path;

    for (const auto& s : settings) {
      const auto [k, v] = split_pair(s, "set");
      fasim::apply_setting(cfg, k, v);
    }
    if (*trials_opt) cfg.plan.num_trials = trials;
    if (*seed_opt) cfg.plan.seed = seed;
    fasim::validate_config(cfg);
    spec.validate();

    const std::string resolved = fasim::format_config(cfg);
    std::cerr << "# resolved configuration\n" << resolved;
    std::cerr << "# sweep " << fasim::sweep_parameter_name(spec.parameter) << " over "
              << spec.grid.size() << " points, forms "
              << (printed ? "printed" : "derived") << '\n';

    int failures = 0;
    if (out_path == "-") {
      failures = fasim::run_sweep(spec, cfg, std::cout, std::cerr);
    } else {
      std::ofstream sidecar(out_path + ".resolved.cfg");
      sidecar << resolved;
      std::ofstream csv(out_path);
      if (!csv) throw fasim::ConfigError("out", "cannot write '" + out_path + "'");
      failures = fasim::run_sweep(spec, cfg, csv, std::cerr);
    }
    if (failures > 0) {
      std::cerr << failures << " cell(s) failed\n";
      return 1;
    }
    return 0;
  } catch (const fasim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
