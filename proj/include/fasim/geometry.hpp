#pragma once

#include <cstdint>
#include <vector>

namespace fasim {

/// Circular multi-FA array. Every FA has N evenly spaced ports along a
/// capillary of length kappa * wavelength; the reference ports sit at the
/// array centre.
struct FaArrayConfig {
  int num_fas = 4;        // M
  int ports_per_fa = 15;  // N
  int skipped_ports = 1;  // nu
  double scaling = 0.2;   // kappa
  double wavelength = 0.06;

  void validate() const;
};

struct FluidParams {
  double initial_charge = 0.07;      // q
  double viscosity = 0.002;          // Pa s
  double thickness_to_length = 0.2;  // D/L
  double voltage_difference = 10.0;  // V

  void validate() const;
};

struct FrameInputs {
  double coherence_bandwidth = 1e8;  // W_c, Hz
  double coherence_time = 0.05;      // T_c, s
  double estimation_fraction = 0.16; // L_e / L_c

  void validate() const;
};

/// Channel-use accounting of one coherence block.
struct FrameBudget {
  double coherence_bandwidth = 0.0;
  double coherence_time = 0.0;
  std::int64_t total_uses = 0;       // L_c
  std::int64_t estimation_uses = 0;  // L_e
  std::int64_t data_uses = 0;        // L_t
  double switching_uses = 0.0;       // l_s
  double pilot_per_port = 0.0;       // Delta
  int selected_count = 0;            // N'
  std::vector<int> selected_ports;   // 1-based, starts at port 1

  double data_fraction() const {
    return static_cast<double>(data_uses) / static_cast<double>(total_uses);
  }
};

/// d_i, metres from the reference port. `port` is 1-based.
double port_displacement(int port, const FaArrayConfig& cfg);

/// Distance between port `port` and a BS at horizontal distance rho.
double link_distance(int port, double rho, const FaArrayConfig& cfg);

/// Average fluid-metal velocity, m/s.
double fluid_velocity(const FluidParams& p);

/// Time for the fluid metal to travel `gap` port spacings.
double switching_delay(double gap, const FaArrayConfig& cfg, const FluidParams& p);

/// Selected-port set for the given array: 1, 1+(nu+1), 1+2(nu+1), ...
std::vector<int> selected_ports(const FaArrayConfig& cfg);

/// Throws InfeasibleError when switching uses swallow the estimation window.
FrameBudget build_frame_budget(const FaArrayConfig& cfg, const FluidParams& p,
                               const FrameInputs& frame);

}  // namespace fasim
