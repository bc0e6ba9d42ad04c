#include "fasim/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "fasim/channel.hpp"
#include "fasim/error.hpp"
#include "fasim/montecarlo.hpp"
#include "fasim/outage.hpp"

namespace fasim {

const char* const kOutageHeader =
    "sweep_value,outage_analytic_common,outage_analytic_perport,outage_lower,outage_upper,"
    "outage_mc,mc_stderr,wall_ms";
const char* const kSkipHeader = "sweep_value,min_skipped_ports,min_skipped_ports_ceil,wall_ms";

namespace {

bool is_integer_parameter(SweepParameter p) {
  return p == SweepParameter::num_fas || p == SweepParameter::ports_per_fa;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt_ms(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

void apply_value(SystemConfig& cfg, SweepParameter p, double v) {
  switch (p) {
    case SweepParameter::tx_power: cfg.tx_power_dbm = v; break;
    case SweepParameter::num_fas: cfg.array.num_fas = static_cast<int>(std::llround(v)); break;
    case SweepParameter::ports_per_fa: cfg.array.ports_per_fa = static_cast<int>(std::llround(v)); break;
    case SweepParameter::bs_density: cfg.network.bs_density = v; break;
    case SweepParameter::target_variance: break;
  }
}

// Evaluates one engine cell, turning failures into nan plus a log line.
template <class F>
double cell(const char* engine, double x, int& failures, std::ostream& log, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    ++failures;
    log << "error: " << engine << " failed at sweep value " << fmt(x) << ": " << e.what() << '\n';
    return std::nan("");
  }
}

}  // namespace

void SweepSpec::validate() const {
  if (grid.empty()) throw ConfigError("sweep", "grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw ConfigError("sweep", "grid must be strictly increasing");
  if (is_integer_parameter(parameter))
    for (const double v : grid)
      if (v != std::round(v)) throw ConfigError("sweep", "grid of an integer parameter holds " + fmt(v));
  if (parameter == SweepParameter::target_variance) {
    if (engines.bounds || engines.monte_carlo)
      throw ConfigError("engines", "target-variance sweeps support only the analytic engine");
    for (const double v : grid)
      if (!(v > 0.0 && v < 1.0)) throw ConfigError("sweep", "target variance must lie in (0, 1)");
  }
  if (engines.bounds && !interference_limited)
    throw ConfigError("engines", "the bounds engine requires --interference-limited");
  if (!engines.analytic && !engines.bounds && !engines.monte_carlo)
    throw ConfigError("engines", "no engine selected");
}

SweepParameter parse_sweep_parameter(const std::string& name) {
  if (name == "tx-power") return SweepParameter::tx_power;
  if (name == "num-fas") return SweepParameter::num_fas;
  if (name == "ports-per-fa") return SweepParameter::ports_per_fa;
  if (name == "bs-density") return SweepParameter::bs_density;
  if (name == "target-variance") return SweepParameter::target_variance;
  throw ConfigError("sweep", "unknown parameter '" + name +
                                 "' (expected tx-power, num-fas, ports-per-fa, bs-density, "
                                 "target-variance)");
}

std::string sweep_parameter_name(SweepParameter p) {
  switch (p) {
    case SweepParameter::tx_power: return "tx-power";
    case SweepParameter::num_fas: return "num-fas";
    case SweepParameter::ports_per_fa: return "ports-per-fa";
    case SweepParameter::bs_density: return "bs-density";
    case SweepParameter::target_variance: return "target-variance";
  }
  return "?";
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  const bool log_scale = parts.size() == 4 && parts[3] == "log";
  if (parts.size() != 3 && !log_scale)
    throw ConfigError("sweep", "grid must be start:stop:steps[:log], got '" + text + "'");
  double start = 0.0;
  double stop = 0.0;
  long steps = 0;
  try {
    std::size_t used = 0;
    start = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("start");
    stop = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("stop");
    steps = std::stol(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("steps");
  } catch (const std::exception&) {
    throw ConfigError("sweep", "malformed grid '" + text + "'");
  }
  if (steps < 1) throw ConfigError("sweep", "grid needs at least one step");
  if (log_scale && !(start > 0.0 && stop > 0.0))
    throw ConfigError("sweep", "log grid needs positive limits");
  std::vector<double> grid;
  for (long i = 0; i < steps; ++i) {
    const double f = steps == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(steps - 1);
    grid.push_back(log_scale ? std::exp(std::log(start) + f * (std::log(stop) - std::log(start)))
                             : start + f * (stop - start));
  }
  return grid;
}

EngineSet parse_engines(const std::string& list) {
  EngineSet e{false, false, false};
  std::stringstream ss(list);
  for (std::string name; std::getline(ss, name, ',');) {
    if (name == "analytic") e.analytic = true;
    else if (name == "bounds") e.bounds = true;
    else if (name == "monte-carlo" || name == "mc") e.monte_carlo = true;
    else throw ConfigError("engines", "unknown engine '" + name + "' (expected analytic, bounds, monte-carlo)");
  }
  return e;
}

Preset figure_preset(const std::string& name) {
  Preset p;
  auto& s = p.spec;
  if (name == "fig3") {
    s.parameter = SweepParameter::tx_power;
    s.grid = parse_grid("0:60:13");
    s.engines = {true, true, true};
    s.interference_limited = true;
  } else if (name == "fig4") {
    s.parameter = SweepParameter::num_fas;
    s.grid = parse_grid("1:12:12");
    p.settings = {{"ports_per_fa", "10"}};
  } else if (name == "fig5") {
    s.parameter = SweepParameter::ports_per_fa;
    s.grid = parse_grid("4:30:14");
  } else if (name == "fig6") {
    s.parameter = SweepParameter::bs_density;
    s.grid = parse_grid("1e-6:1e-3:10:log");
  } else if (name == "fig7") {
    s.parameter = SweepParameter::target_variance;
    s.grid = parse_grid("0.05:0.95:19");
    s.engines = {true, false, false};
    p.settings = {{"ports_per_fa", "20"}};
  } else {
    throw ConfigError("preset", "unknown preset '" + name + "' (valid: fig3, fig4, fig5, fig6, fig7)");
  }
  return p;
}

int run_sweep(const SweepSpec& spec, const SystemConfig& base, std::ostream& csv, std::ostream& log) {
  spec.validate();
  int failures = 0;
  using clock = std::chrono::steady_clock;

  if (spec.parameter == SweepParameter::target_variance) {
    csv << kSkipHeader << '\n';
    const Scenario sc = to_scenario(base, spec.forms);
    const double rho = 1.0 / std::sqrt(std::numbers::pi * sc.network.bs_density);
    for (const double x : spec.grid) {
      const auto t0 = clock::now();
      const double nu = cell("analytic", x, failures, log, [&] {
        return min_skipped_ports(x, rho, 1, sc.array, sc.fluid, sc.frame, sc.network, spec.forms);
      });
      const double ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
      csv << fmt(x) << ',' << fmt(nu) << ',' << fmt(std::isnan(nu) ? nu : std::ceil(nu)) << ','
          << fmt_ms(ms) << '\n';
    }
    return failures;
  }

  csv << kOutageHeader << '\n';
  for (const double x : spec.grid) {
    const auto t0 = clock::now();
    SystemConfig cfg = base;
    apply_value(cfg, spec.parameter, x);
    double common = std::nan("");
    double perport = std::nan("");
    double lower = std::nan("");
    double upper = std::nan("");
    double mc = std::nan("");
    double se = std::nan("");
    std::optional<Scenario> sc;
    try {
      sc = to_scenario(cfg, spec.forms);
    } catch (const std::exception& e) {
      ++failures;
      log << "error: configuration invalid at sweep value " << fmt(x) << ": " << e.what() << '\n';
    }
    const bool want_common = spec.modes != AnalyticModes::per_port_gamma;
    const bool want_perport = spec.modes != AnalyticModes::common_gamma;
    if (sc) {
      if (spec.engines.analytic && want_common)
        common = cell("analytic common-gamma", x, failures, log, [&] {
          return outage_probability(*sc, {AnalyticMode::common_gamma});
        });
      if (spec.engines.analytic && want_perport)
        perport = cell("analytic per-port-gamma", x, failures, log, [&] {
          return outage_probability(*sc, {AnalyticMode::per_port_gamma});
        });
      if (spec.engines.bounds) {
        const double b = cell("bounds", x, failures, log, [&] {
          const auto ob = outage_bounds(*sc);
          upper = ob.upper;
          return ob.lower;
        });
        lower = b;
        if (std::isnan(b)) upper = b;
      }
      if (spec.engines.monte_carlo)
        mc = cell("monte-carlo", x, failures, log, [&] {
          const auto est = estimate_outage(cfg.plan, *sc);
          se = est.standard_error;
          return est.probability;
        });
    }
    const double ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    // Columns of engines that were not requested stay empty.
    auto col = [](bool requested, double v) { return requested ? fmt(v) : std::string(); };
    csv << fmt(x) << ',' << col(spec.engines.analytic && want_common, common) << ','
        << col(spec.engines.analytic && want_perport, perport) << ','
        << col(spec.engines.bounds, lower) << ',' << col(spec.engines.bounds, upper) << ','
        << col(spec.engines.monte_carlo, mc) << ',' << col(spec.engines.monte_carlo, se) << ','
        << fmt_ms(ms) << '\n';
    csv.flush();
  }
  return failures;
}

}  // namespace fasim
