// SPDX-License-Identifier: Apache-2.0
//
// Analytical results for the quantized-feedback cognitive downlink: the
// interference bound and the transmit power caps it implies (with and
// without feedback delay), the per-user SINR distribution under the
// quantization-cell model, the feedback utility function f(M, B), its
// continuous relaxation, and the asymptotic-regime formulas.
//
// Conventions: everything is linear-scale, rates in bits/s/Hz.  The SINR
// distribution treats inter-user interference through the quantization-
// cell approximation, so it is a model of the simulated system, accurate
// to a few percent rather than exact.

#pragma once

#include <cogfb/config.hpp>
#include <cogfb/special.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace cogfb {

// Upper bound on the average interference at the primary receiver when
// the beams null a B-bit quantization of the interference channel:
// alpha * P * n_t / (n_t - 1) * 2^(-B / (n_t - 1)).
inline double interference_bound(double power, int b_bits,
                                 const SystemConfig& cfg) {
  if (power < 0.0) throw std::invalid_argument("interference_bound: power < 0");
  if (b_bits < 0) throw std::invalid_argument("interference_bound: b_bits < 0");
  double nt = cfg.n_t;
  return cfg.alpha * power * nt / (nt - 1.0) *
         std::exp2(-static_cast<double>(b_bits) / (nt - 1.0));
}

// Largest transmit power that keeps the interference bound at i_aic:
// (n_t - 1) * i_aic / (alpha * n_t) * 2^(B / (n_t - 1)).
inline double power_cap(int b_bits, const SystemConfig& cfg) {
  if (b_bits < 0) throw std::invalid_argument("power_cap: b_bits < 0");
  double nt = cfg.n_t;
  return (nt - 1.0) * cfg.i_aic / (cfg.alpha * nt) *
         std::exp2(static_cast<double>(b_bits) / (nt - 1.0));
}

// Power cap when the fed-back interference CSI is outdated with
// correlation rho: i_aic / (alpha * (n_t rho / (n_t-1) * 2^(-B/(n_t-1))
// + (1 - rho))).  Reduces to power_cap exactly at rho = 1.
inline double power_cap_delayed(int b_bits, const SystemConfig& cfg) {
  if (b_bits < 0) throw std::invalid_argument("power_cap_delayed: b_bits < 0");
  if (cfg.rho < 0.0 || cfg.rho > 1.0)
    throw std::invalid_argument("power_cap_delayed: rho outside [0, 1]");
  if (cfg.rho == 1.0) return power_cap(b_bits, cfg);
  double nt = cfg.n_t;
  double quant = nt * cfg.rho / (nt - 1.0) *
                 std::exp2(-static_cast<double>(b_bits) / (nt - 1.0));
  return cfg.i_aic / (cfg.alpha * (quant + (1.0 - cfg.rho)));
}

// Effective noise coefficient nu of the SINR distribution.
// At the AIC-implied power cap it collapses to eta * M * 2^(-B/(n_t-1));
// for an arbitrary fixed power it is sigma2 * M / P.
inline double noise_coeff_capped(int mode, int b_bits,
                                 const SystemConfig& cfg) {
  return cfg.eta() * mode *
         std::exp2(-static_cast<double>(b_bits) / (cfg.n_t - 1.0));
}

inline double noise_coeff_fixed_power(int mode, double power,
                                      const SystemConfig& cfg) {
  if (!(power > 0.0))
    throw std::invalid_argument("noise_coeff_fixed_power: power <= 0");
  return cfg.sigma2 * mode / power;
}

inline double noise_coeff_delayed(int mode, int b_bits,
                                  const SystemConfig& cfg) {
  return cfg.sigma2 * mode / power_cap_delayed(b_bits, cfg);
}

// Cdf of the per-user SINR under the quantization-cell model:
// F(x) = 1 - exp(-nu x) / (1 + delta x)^(M-1).
// b_bits only enters through the caller-supplied nu; it is kept in the
// signature to mirror the utility call sites.
inline double sinr_cdf(double x, int mode, [[maybe_unused]] int b_bits,
                       const SystemConfig& cfg, double noise_coeff) {
  if (x < 0.0) throw std::invalid_argument("sinr_cdf: x < 0");
  if (mode < 2) throw std::invalid_argument("sinr_cdf: mode < 2");
  if (!(noise_coeff > 0.0)) throw std::invalid_argument("sinr_cdf: nu <= 0");
  double d = cfg.delta();
  return 1.0 - std::exp(-noise_coeff * x) / std::pow(1.0 + d * x, mode - 1);
}

// Density of the same distribution, the derivative of sinr_cdf:
// p(x) = nu exp(-nu x) (1 + delta x)^(1-M)
//      + delta (M-1) exp(-nu x) (1 + delta x)^(-M).
inline double sinr_pdf(double x, int mode, [[maybe_unused]] int b_bits,
                       const SystemConfig& cfg, double noise_coeff) {
  if (x < 0.0) throw std::invalid_argument("sinr_pdf: x < 0");
  if (mode < 2) throw std::invalid_argument("sinr_pdf: mode < 2");
  if (!(noise_coeff > 0.0)) throw std::invalid_argument("sinr_pdf: nu <= 0");
  double d = cfg.delta();
  double e = std::exp(-noise_coeff * x);
  return noise_coeff * e * std::pow(1.0 + d * x, 1 - mode) +
         d * (mode - 1) * e * std::pow(1.0 + d * x, -mode);
}

namespace detail {

inline void check_mode_bits(int mode, int b_bits, const SystemConfig& cfg,
                            const char* who) {
  if (mode < 2 || mode > cfg.n_t - 1 || b_bits < 0 || b_bits > cfg.b_max)
    throw std::invalid_argument(std::string(who) +
                                ": (mode, b_bits) outside the feasible box");
}

// Average sum rate for a given noise coefficient:
// log2(e) * M / delta^(M-1) * i1(nu, 1/delta, M - 1).
inline double rate_closed_form(int mode, double nu, const SystemConfig& cfg) {
  double d = cfg.delta();
  return kLog2E * mode / std::pow(d, mode - 1) * i1(nu, 1.0 / d, mode - 1);
}

}  // namespace detail

// Feedback utility f(M, B): average sum rate at the AIC-implied power cap
// minus the feedback price mu * B.  With delayed = true the power cap (and
// hence the noise coefficient) accounts for outdated interference CSI.
inline double utility(int mode, int b_bits, const SystemConfig& cfg,
                      bool delayed = false) {
  detail::check_mode_bits(mode, b_bits, cfg, "utility");
  double nu = delayed ? noise_coeff_delayed(mode, b_bits, cfg)
                      : noise_coeff_capped(mode, b_bits, cfg);
  return detail::rate_closed_form(mode, nu, cfg) - cfg.mu * b_bits;
}

// Continuous relaxation of utility over real-valued (M, B), evaluated by
// adaptive quadrature (the i1 expansion needs integer exponents):
// log2(e) * M / delta^(M-1) * integral exp(-nu t) / ((t+1)(t+1/delta)^(M-1))
// - mu B.  Agrees with utility() at integer lattice points.
inline double utility_relaxed(double mode, double b_bits,
                              const SystemConfig& cfg, bool delayed = false) {
  if (mode < 2.0 || b_bits < 0.0)
    throw std::invalid_argument("utility_relaxed: outside the feasible box");
  double d = cfg.delta();
  double nu;
  if (delayed) {
    double quant = cfg.n_t * cfg.rho / (cfg.n_t - 1.0) *
                   std::exp2(-b_bits / (cfg.n_t - 1.0));
    double cap = cfg.i_aic / (cfg.alpha * (quant + (1.0 - cfg.rho)));
    nu = cfg.sigma2 * mode / cap;
  } else {
    nu = cfg.eta() * mode * std::exp2(-b_bits / (cfg.n_t - 1.0));
  }
  double y = 1.0 / d;
  double zm1 = mode - 1.0;
  double integral = integrate_halfline([nu, y, zm1](double t) {
    return std::exp(-nu * t - zm1 * std::log(t + y)) / (t + 1.0);
  });
  return kLog2E * mode * std::pow(d, -zm1) * integral - cfg.mu * b_bits;
}

// Average sum rate at a fixed transmit power with B = 0 (the regime where
// the interference constraint never binds):
// M log2(e) / delta^(M-1) * i1(sigma2 M / P', 1/delta, M-1).
inline double asymptotic_rate_fixed_power(int mode, double power,
                                          const SystemConfig& cfg) {
  if (!(power > 0.0))
    throw std::invalid_argument("asymptotic_rate_fixed_power: power <= 0");
  if (mode < 2 || mode > cfg.n_t - 1)
    throw std::invalid_argument("asymptotic_rate_fixed_power: bad mode");
  return detail::rate_closed_form(
      mode, noise_coeff_fixed_power(mode, power, cfg), cfg);
}

// Noise-limited limit of the utility (inter-user interference neglected):
// M log2(e) exp(nu) E1(nu) - mu B with nu = eta M 2^(-B/(n_t-1)).
inline double asymptotic_utility_noise_free(int mode, int b_bits,
                                            const SystemConfig& cfg) {
  detail::check_mode_bits(mode, b_bits, cfg, "asymptotic_utility_noise_free");
  double nu = noise_coeff_capped(mode, b_bits, cfg);
  return kLog2E * mode * exp_e1_scaled(nu) - cfg.mu * b_bits;
}

// Utility values over the whole feasible lattice, M in [2, n_t-1] by
// B in [0, b_max]; row index M - 2, column index B.
struct UtilityGrid {
  int n_t = 0;
  int b_max = 0;
  std::vector<double> values;  // (n_t - 2) * (b_max + 1), row-major

  double at(int mode, int b_bits) const {
    return values[static_cast<std::size_t>(mode - 2) * (b_max + 1) + b_bits];
  }
  double& at(int mode, int b_bits) {
    return values[static_cast<std::size_t>(mode - 2) * (b_max + 1) + b_bits];
  }
};

inline UtilityGrid utility_grid(const SystemConfig& cfg, bool delayed = false) {
  UtilityGrid grid;
  grid.n_t = cfg.n_t;
  grid.b_max = cfg.b_max;
  grid.values.assign(static_cast<std::size_t>(cfg.mode_count()) *
                         (cfg.b_max + 1),
                     0.0);
  for (int m = 2; m <= cfg.n_t - 1; ++m)
    for (int b = 0; b <= cfg.b_max; ++b)
      grid.at(m, b) = utility(m, b, cfg, delayed);
  return grid;
}

}  // namespace cogfb
