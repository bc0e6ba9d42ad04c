#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fasim/config.hpp"

namespace fasim {

enum class SweepParameter { tx_power, num_fas, ports_per_fa, bs_density, target_variance };

struct EngineSet {
  bool analytic = true;
  bool bounds = false;
  bool monte_carlo = true;
};

/// Which analytic variants fill the two analytic columns.
enum class AnalyticModes { both, common_gamma, per_port_gamma };

struct SweepSpec {
  SweepParameter parameter = SweepParameter::tx_power;
  std::vector<double> grid;
  EngineSet engines;
  AnalyticModes modes = AnalyticModes::both;
  bool interference_limited = false;  // required by the bounds engine
  Forms forms = Forms::derived;
  std::string output_path;

  void validate() const;
};

/// Column header of ordinary sweeps and of the skip-count sweep.
extern const char* const kOutageHeader;
extern const char* const kSkipHeader;

SweepParameter parse_sweep_parameter(const std::string& name);
std::string sweep_parameter_name(SweepParameter p);

/// "start:stop:steps" with an optional ":log" suffix.
std::vector<double> parse_grid(const std::string& text);

EngineSet parse_engines(const std::string& list);

struct Preset {
  SweepSpec spec;
  std::vector<std::pair<std::string, std::string>> settings;  // applied before user overrides
};

/// Sweep reproducing one of the figure datasets: fig3 .. fig7.
Preset figure_preset(const std::string& name);

/// Writes one CSV row per grid value. Returns the number of failed cells;
/// failures are written as nan and reported on `log`.
int run_sweep(const SweepSpec& spec, const SystemConfig& base, std::ostream& csv, std::ostream& log);

}  // namespace fasim
