#include "fasim/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "fasim/error.hpp"

namespace fasim {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out))
    throw ConfigError(std::string(key), "expected a real number, got '" + std::string(v) + "'");
  return out;
}

long long parse_integer(std::string_view key, std::string_view v) {
  long long out = 0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end)
    throw ConfigError(std::string(key), "expected an integer, got '" + std::string(v) + "'");
  return out;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end)
    throw ConfigError(std::string(key), "expected a non-negative integer, got '" + std::string(v) + "'");
  return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(std::string(key), "expected true or false, got '" + std::string(v) + "'");
}

int parse_int(std::string_view key, std::string_view v) {
  const long long x = parse_integer(key, v);
  if (x < -1000000000LL || x > 1000000000LL) throw ConfigError(std::string(key), "out of range");
  return static_cast<int>(x);
}

template <class E>
E parse_choice(std::string_view key, std::string_view v,
               std::initializer_list<std::pair<const char*, E>> choices) {
  std::string names;
  for (const auto& [name, value] : choices) {
    if (v == name) return value;
    names += names.empty() ? name : std::string(", ") + name;
  }
  throw ConfigError(std::string(key), "expected one of {" + names + "}, got '" + std::string(v) + "'");
}

template <class E>
const char* choice_name(E v, std::initializer_list<std::pair<const char*, E>> choices) {
  for (const auto& [name, value] : choices)
    if (value == v) return name;
  return "?";
}

const std::initializer_list<std::pair<const char*, EstimateModel>> kEstimateNames = {
    {"anchored", EstimateModel::anchored},
    {"orthogonal", EstimateModel::orthogonal},
    {"additive", EstimateModel::additive}};
const std::initializer_list<std::pair<const char*, FadeModel>> kFadeNames = {
    {"independent", FadeModel::independent}, {"shared", FadeModel::shared}};
const std::initializer_list<std::pair<const char*, SinrModel>> kSinrNames = {
    {"analytic", SinrModel::analytic_error}, {"realized", SinrModel::realized_error}};
const std::initializer_list<std::pair<const char*, InterferenceSource>> kSourceNames = {
    {"exact", InterferenceSource::exact_field}, {"gamma", InterferenceSource::gamma_model}};

using Setter = std::function<void(SystemConfig&, std::string_view, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"bs_density", [](auto& c, auto k, auto v) { c.network.bs_density = parse_real(k, v); }},
      {"path_loss_exponent",
       [](auto& c, auto k, auto v) { c.network.path_loss_exponent = parse_real(k, v); }},
      {"tx_power_dbm", [](auto& c, auto k, auto v) { c.tx_power_dbm = parse_real(k, v); }},
      {"noise_power", [](auto& c, auto k, auto v) { c.network.noise_power_w = parse_real(k, v); }},
      {"channel_variance",
       [](auto& c, auto k, auto v) { c.network.channel_variance = parse_real(k, v); }},
      {"num_fas", [](auto& c, auto k, auto v) { c.array.num_fas = parse_int(k, v); }},
      {"ports_per_fa", [](auto& c, auto k, auto v) { c.array.ports_per_fa = parse_int(k, v); }},
      {"skipped_ports", [](auto& c, auto k, auto v) { c.array.skipped_ports = parse_int(k, v); }},
      {"scaling_constant", [](auto& c, auto k, auto v) { c.array.scaling = parse_real(k, v); }},
      {"wavelength", [](auto& c, auto k, auto v) { c.array.wavelength = parse_real(k, v); }},
      {"initial_charge", [](auto& c, auto k, auto v) { c.fluid.initial_charge = parse_real(k, v); }},
      {"viscosity", [](auto& c, auto k, auto v) { c.fluid.viscosity = parse_real(k, v); }},
      {"thickness_to_length",
       [](auto& c, auto k, auto v) { c.fluid.thickness_to_length = parse_real(k, v); }},
      {"voltage_difference",
       [](auto& c, auto k, auto v) { c.fluid.voltage_difference = parse_real(k, v); }},
      {"coherence_bandwidth",
       [](auto& c, auto k, auto v) { c.frame.coherence_bandwidth = parse_real(k, v); }},
      {"coherence_time", [](auto& c, auto k, auto v) { c.frame.coherence_time = parse_real(k, v); }},
      {"estimation_fraction",
       [](auto& c, auto k, auto v) { c.frame.estimation_fraction = parse_real(k, v); }},
      {"target_rate", [](auto& c, auto k, auto v) { c.target_rate = parse_real(k, v); }},
      {"trials", [](auto& c, auto k, auto v) { c.plan.num_trials = parse_integer(k, v); }},
      {"seed", [](auto& c, auto k, auto v) { c.plan.seed = parse_unsigned(k, v); }},
      {"faithful_pilot", [](auto& c, auto k, auto v) { c.plan.faithful_pilot = parse_bool(k, v); }},
      {"outer_radius", [](auto& c, auto k, auto v) { c.plan.outer_radius = parse_real(k, v); }},
      {"mc_estimate",
       [](auto& c, auto k, auto v) { c.plan.estimate = parse_choice(k, v, kEstimateNames); }},
      {"mc_fades", [](auto& c, auto k, auto v) { c.plan.fades = parse_choice(k, v, kFadeNames); }},
      {"mc_sinr", [](auto& c, auto k, auto v) { c.plan.sinr = parse_choice(k, v, kSinrNames); }},
      {"mc_interference",
       [](auto& c, auto k, auto v) { c.plan.interference = parse_choice(k, v, kSourceNames); }},
  };
  return table;
}

void require(bool ok, const char* key, const char* what) {
  if (!ok) throw ConfigError(key, what);
}

std::string real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

void apply_setting(SystemConfig& cfg, std::string_view key, std::string_view value) {
  const auto it = setters().find(key);
  if (it == setters().end()) throw ConfigError(std::string(key), "unknown key");
  it->second(cfg, key, value);
}

void validate_config(const SystemConfig& c) {
  require(c.network.bs_density > 0.0, "bs_density", "must be > 0");
  require(c.network.path_loss_exponent > 2.0, "path_loss_exponent",
          "must exceed 2 (the Campbell integral for the mean interference diverges otherwise)");
  require(c.network.noise_power_w > 0.0, "noise_power", "must be > 0");
  require(c.network.channel_variance > 0.0, "channel_variance", "must be > 0");
  require(c.array.num_fas >= 1, "num_fas", "must be >= 1");
  require(c.array.ports_per_fa >= 2, "ports_per_fa", "must be >= 2");
  require(c.array.skipped_ports >= 0, "skipped_ports", "must be >= 0");
  require(c.array.skipped_ports <= c.array.ports_per_fa - 1, "skipped_ports",
          "invariant skipped_ports <= ports_per_fa - 1 violated");
  require(c.array.scaling > 0.0, "scaling_constant", "must be > 0");
  require(c.array.wavelength > 0.0, "wavelength", "must be > 0");
  require(c.fluid.initial_charge > 0.0, "initial_charge", "must be > 0");
  require(c.fluid.viscosity > 0.0, "viscosity", "must be > 0");
  require(c.fluid.thickness_to_length > 0.0, "thickness_to_length", "must be > 0");
  require(c.fluid.voltage_difference > 0.0, "voltage_difference", "must be > 0");
  require(c.frame.coherence_bandwidth > 0.0, "coherence_bandwidth", "must be > 0");
  require(c.frame.coherence_time > 0.0, "coherence_time", "must be > 0");
  require(c.frame.estimation_fraction > 0.0 && c.frame.estimation_fraction < 1.0,
          "estimation_fraction", "must lie in (0, 1)");
  require(c.target_rate >= 0.0, "target_rate", "must be >= 0");
  require(c.plan.num_trials >= 1, "trials", "must be >= 1");
  require(c.plan.outer_radius >= 0.0, "outer_radius", "must be >= 0 (0 selects the default)");
  try {
    build_frame_budget(c.array, c.fluid, c.frame);
  } catch (const InfeasibleError& e) {
    throw ConfigError("frame", e.what());
  }
}

SystemConfig parse_config(std::string_view text) {
  SystemConfig cfg;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no), "expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no), "empty key");
    if (!seen.insert(std::string(key)).second) throw ConfigError(std::string(key), "duplicate key");
    apply_setting(cfg, key, value);
  }
  cfg.network.tx_power_w = dbm_to_watts(cfg.tx_power_dbm);
  validate_config(cfg);
  return cfg;
}

SystemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string format_config(const SystemConfig& c) {
  std::ostringstream o;
  o << "bs_density = " << real(c.network.bs_density) << '\n'
    << "path_loss_exponent = " << real(c.network.path_loss_exponent) << '\n'
    << "tx_power_dbm = " << real(c.tx_power_dbm) << '\n'
    << "noise_power = " << real(c.network.noise_power_w) << '\n'
    << "channel_variance = " << real(c.network.channel_variance) << '\n'
    << "num_fas = " << c.array.num_fas << '\n'
    << "ports_per_fa = " << c.array.ports_per_fa << '\n'
    << "skipped_ports = " << c.array.skipped_ports << '\n'
    << "scaling_constant = " << real(c.array.scaling) << '\n'
    << "wavelength = " << real(c.array.wavelength) << '\n'
    << "initial_charge = " << real(c.fluid.initial_charge) << '\n'
    << "viscosity = " << real(c.fluid.viscosity) << '\n'
    << "thickness_to_length = " << real(c.fluid.thickness_to_length) << '\n'
    << "voltage_difference = " << real(c.fluid.voltage_difference) << '\n'
    << "coherence_bandwidth = " << real(c.frame.coherence_bandwidth) << '\n'
    << "coherence_time = " << real(c.frame.coherence_time) << '\n'
    << "estimation_fraction = " << real(c.frame.estimation_fraction) << '\n'
    << "target_rate = " << real(c.target_rate) << '\n'
    << "trials = " << c.plan.num_trials << '\n'
    << "seed = " << c.plan.seed << '\n'
    << "faithful_pilot = " << (c.plan.faithful_pilot ? "true" : "false") << '\n'
    << "outer_radius = " << real(c.plan.outer_radius) << '\n'
    << "mc_estimate = " << choice_name(c.plan.estimate, kEstimateNames) << '\n'
    << "mc_fades = " << choice_name(c.plan.fades, kFadeNames) << '\n'
    << "mc_sinr = " << choice_name(c.plan.sinr, kSinrNames) << '\n'
    << "mc_interference = " << choice_name(c.plan.interference, kSourceNames) << '\n';
  return o.str();
}

Scenario to_scenario(const SystemConfig& cfg, Forms forms) {
  validate_config(cfg);
  NetworkConfig net = cfg.network;
  net.tx_power_w = dbm_to_watts(cfg.tx_power_dbm);
  return make_scenario(net, cfg.array, cfg.fluid, cfg.frame, cfg.target_rate, forms);
}

}  // namespace fasim
