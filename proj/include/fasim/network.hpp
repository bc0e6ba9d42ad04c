#pragma once

namespace fasim {

/// Poisson BS field and link-budget scalars.
struct NetworkConfig {
  double bs_density = 5e-5;       // lambda_b, BS/m^2
  double path_loss_exponent = 4;  // a
  double tx_power_w = 1.0;        // P
  double noise_power_w = 1e-5;    // N0
  double channel_variance = 1.0;  // sigma^2

  /// epsilon = sigma^2 P / N0.
  double transmit_snr() const { return channel_variance * tx_power_w / noise_power_w; }

  void validate() const;
};

}  // namespace fasim
