#include "fasim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fasim/error.hpp"

namespace fasim {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(name) + " must be > 0");
}

void require_port(int port, const FaArrayConfig& cfg) {
  if (port < 1 || port > cfg.ports_per_fa)
    throw DomainError("port index " + std::to_string(port) + " outside [1, " +
                      std::to_string(cfg.ports_per_fa) + "]");
}

}  // namespace

void FaArrayConfig::validate() const {
  if (num_fas < 1) throw DomainError("num_fas must be >= 1");
  if (ports_per_fa < 2) throw DomainError("ports_per_fa must be >= 2");
  if (skipped_ports < 0 || skipped_ports > ports_per_fa - 1)
    throw DomainError("skipped_ports must lie in [0, ports_per_fa - 1]");
  require_positive(scaling, "scaling");
  require_positive(wavelength, "wavelength");
}

void FluidParams::validate() const {
  require_positive(initial_charge, "initial_charge");
  require_positive(viscosity, "viscosity");
  require_positive(thickness_to_length, "thickness_to_length");
  require_positive(voltage_difference, "voltage_difference");
}

void FrameInputs::validate() const {
  require_positive(coherence_bandwidth, "coherence_bandwidth");
  require_positive(coherence_time, "coherence_time");
  if (!(estimation_fraction > 0.0 && estimation_fraction < 1.0))
    throw DomainError("estimation_fraction must lie in (0, 1)");
}

double port_displacement(int port, const FaArrayConfig& cfg) {
  require_port(port, cfg);
  return static_cast<double>(port - 1) / (cfg.ports_per_fa - 1) * cfg.scaling * cfg.wavelength;
}

double link_distance(int port, double rho, const FaArrayConfig& cfg) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("link_distance: rho must be > 0");
  return std::hypot(rho, port_displacement(port, cfg));
}

double fluid_velocity(const FluidParams& p) {
  p.validate();
  return p.initial_charge / (6.0 * p.viscosity) * p.thickness_to_length * p.voltage_difference;
}

double switching_delay(double gap, const FaArrayConfig& cfg, const FluidParams& p) {
  if (!(gap >= 0.0)) throw DomainError("switching_delay: gap must be >= 0");
  if (gap > cfg.ports_per_fa - 1) throw DomainError("switching_delay: gap exceeds the array");
  return cfg.scaling * cfg.wavelength / fluid_velocity(p) * gap / (cfg.ports_per_fa - 1);
}

std::vector<int> selected_ports(const FaArrayConfig& cfg) {
  std::vector<int> out;
  for (int i = 1; i <= cfg.ports_per_fa; i += cfg.skipped_ports + 1) out.push_back(i);
  return out;
}

FrameBudget build_frame_budget(const FaArrayConfig& cfg, const FluidParams& p,
                               const FrameInputs& frame) {
  cfg.validate();
  p.validate();
  frame.validate();

  FrameBudget b;
  b.coherence_bandwidth = frame.coherence_bandwidth;
  b.coherence_time = frame.coherence_time;
  b.total_uses = std::llround(frame.coherence_bandwidth * frame.coherence_time);
  b.estimation_uses = std::llround(frame.estimation_fraction * static_cast<double>(b.total_uses));
  if (b.estimation_uses < 1 || b.estimation_uses >= b.total_uses)
    throw InfeasibleError("estimation period must hold between 1 and L_c - 1 uses");
  b.data_uses = b.total_uses - b.estimation_uses;

  b.selected_ports = selected_ports(cfg);
  b.selected_count = static_cast<int>(b.selected_ports.size());
  const int stride = cfg.skipped_ports + 1;
  // Stride is capped by the array length, so nu = N-1 gives N' = 1.
  const double gap = std::min(stride, cfg.ports_per_fa - 1);
  b.switching_uses = cfg.num_fas * (b.selected_count - 1) * switching_delay(gap, cfg, p) *
                     frame.coherence_bandwidth;
  const double usable = static_cast<double>(b.estimation_uses) - b.switching_uses;
  if (!(usable > 0.0))
    throw InfeasibleError("switching uses (" + std::to_string(b.switching_uses) +
                          ") consume the estimation window (" +
                          std::to_string(b.estimation_uses) + ")");
  b.pilot_per_port = usable / (b.selected_count * cfg.num_fas);
  return b;
}

}  // namespace fasim
