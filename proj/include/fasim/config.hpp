#pragma once

#include <string>
#include <string_view>

#include "fasim/geometry.hpp"
#include "fasim/montecarlo.hpp"
#include "fasim/network.hpp"
#include "fasim/outage.hpp"

namespace fasim {

/// Every tunable of a run. Defaults are the reference scenario at 30 dBm.
struct SystemConfig {
  NetworkConfig network;
  FaArrayConfig array;
  FluidParams fluid;
  FrameInputs frame;
  double target_rate = 1.0;
  double tx_power_dbm = 30.0;
  TrialPlan plan;
};

/// Parses flat `key = value` text; `#` starts a comment. Unknown keys,
/// malformed values and broken invariants throw ConfigError naming the key.
SystemConfig parse_config(std::string_view text);

SystemConfig load_config(const std::string& path);

/// Sets one key as if it had appeared in the file.
void apply_setting(SystemConfig& cfg, std::string_view key, std::string_view value);

/// Checks every invariant, including frame feasibility.
void validate_config(const SystemConfig& cfg);

/// Fully resolved config in the file format, one key per line.
std::string format_config(const SystemConfig& cfg);

Scenario to_scenario(const SystemConfig& cfg, Forms forms = Forms::derived);

double dbm_to_watts(double dbm);

}  // namespace fasim
