// SPDX-License-Identifier: Apache-2.0
//
// Scenario parameters for the limited-cooperation cognitive downlink.
// Everything in this header is linear-scale; dB conversion belongs to the
// CLI / experiment boundary.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace cogfb {

// One downlink scenario: a cognitive base station with n_t antennas serves
// M single-antenna users (2 <= M <= n_t - 1) with zero-forcing beams that
// also null the quantized channel toward a primary receiver.  Each user
// feeds back c_bits of channel direction information; up to b_max bits
// describing the interference channel can be bought from the primary
// receiver at a price of mu rate units per bit.  The average interference
// at the primary receiver must stay below i_aic.
struct SystemConfig {
  int n_t = 5;          // transmit antennas (>= 3)
  int c_bits = 2;       // user feedback bits C (>= 0)
  int b_max = 4;        // largest purchasable feedback amount B0 (>= 0)
  double mu = 0.1;      // price per purchased bit, bits/s/Hz per bit
  double alpha = 0.01;  // path-loss ratio of the interference link (> 0)
  double sigma2 = 1.0;  // receiver noise variance (> 0)
  double i_aic = 0.1;   // allowed average interference, linear (> 0)
  double rho = 1.0;     // feedback-delay correlation coefficient in [0, 1]

  // Effective noise constant after substituting the power cap:
  // eta = alpha * n_t * sigma2 / ((n_t - 1) * i_aic).
  double eta() const { return alpha * n_t * sigma2 / ((n_t - 1) * i_aic); }

  // Residual inter-user interference scale from user-side quantization:
  // delta = 2^(-C / (n_t - 1)).
  double delta() const {
    return std::exp2(-static_cast<double>(c_bits) / (n_t - 1));
  }

  // Throws std::invalid_argument naming every field out of range.
  void validate() const {
    std::string bad;
    auto flag = [&bad](bool ok, const char* field) {
      if (!ok) {
        if (!bad.empty()) bad += ", ";
        bad += field;
      }
    };
    flag(n_t >= 3, "n_t");
    flag(c_bits >= 0, "c_bits");
    flag(b_max >= 0, "b_max");
    flag(std::isfinite(mu) && mu >= 0.0, "mu");
    flag(std::isfinite(alpha) && alpha > 0.0, "alpha");
    flag(std::isfinite(sigma2) && sigma2 > 0.0, "sigma2");
    flag(std::isfinite(i_aic) && i_aic > 0.0, "i_aic");
    flag(std::isfinite(rho) && rho >= 0.0 && rho <= 1.0, "rho");
    if (!bad.empty())
      throw std::invalid_argument("SystemConfig: invalid fields: " + bad);
  }

  // Number of selectable transmission modes, M in [2, n_t - 1].
  int mode_count() const { return n_t - 2; }
};

inline constexpr double kLog2E = 1.4426950408889634;  // log2(e)

}  // namespace cogfb
