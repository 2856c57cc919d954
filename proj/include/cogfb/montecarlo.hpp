// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo engine.  Every estimator below draws its randomness from a
// per-trial generator seeded by (seed, trial index + 1); stream index 0 is
// reserved for codebooks shared across trials.  Within a trial the draw
// order is fixed: interference channel, user channels in user order,
// interference codebook, per-user codebooks in user order, beam
// coefficients inside the beamformer, delay perturbation last.  Sums over
// trials use pairwise reduction so results are independent of the trial
// batching.

#pragma once

#include <cogfb/beamforming.hpp>
#include <cogfb/closed_form.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cogfb {

struct SimOptions {
  bool fixed_codebooks = false;  // share one codebook set across trials
  bool delayed = false;          // apply the delay model to the true link
};

struct SimStats {
  std::int64_t trials = 0;
  double mean = 0.0;
  double std_error = 0.0;
  std::map<std::string, std::vector<double>> extra;
};

namespace detail {

// Pairwise reduction over [lo, hi).
inline double pairwise_sum(const std::vector<double>& v, std::size_t lo,
                           std::size_t hi) {
  std::size_t n = hi - lo;
  if (n == 0) return 0.0;
  if (n == 1) return v[lo];
  if (n == 2) return v[lo] + v[lo + 1];
  std::size_t mid = lo + n / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

inline void fill_mean_stderr(const std::vector<double>& samples,
                             SimStats& stats) {
  std::size_t n = samples.size();
  stats.trials = static_cast<std::int64_t>(n);
  stats.mean = pairwise_sum(samples, 0, n) / static_cast<double>(n);
  if (n < 2) {
    stats.std_error = 0.0;
    return;
  }
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    double d = samples[i] - stats.mean;
    sq[i] = d * d;
  }
  double var = pairwise_sum(sq, 0, n) / static_cast<double>(n - 1);
  stats.std_error = std::sqrt(var / static_cast<double>(n));
}

struct TrialOutcome {
  ChannelRealization real;
  BeamSet beams;
  double quantization_error = 0.0;
};

struct CodebookSet {
  Codebook interference;
  std::vector<Codebook> users;
};

inline CodebookSet make_codebooks(const SystemConfig& cfg, int mode,
                                  int b_bits, std::mt19937_64& rand) {
  CodebookSet set;
  set.interference = generate_codebook(cfg.n_t, b_bits, rand);
  set.users.reserve(static_cast<std::size_t>(mode));
  for (int k = 0; k < mode; ++k)
    set.users.push_back(generate_codebook(cfg.n_t, cfg.c_bits, rand));
  return set;
}

// One channel draw, quantization pass and beam construction.
inline TrialOutcome run_trial(const SystemConfig& cfg, int mode, int b_bits,
                              const SimOptions& opts,
                              const CodebookSet* shared,
                              std::mt19937_64& rand) {
  TrialOutcome out;
  ComplexVector g = sample_channel(cfg.n_t, rand);
  std::vector<ComplexVector> users;
  users.reserve(static_cast<std::size_t>(mode));
  for (int k = 0; k < mode; ++k) users.push_back(sample_channel(cfg.n_t, rand));

  CodebookSet local;
  const CodebookSet* books = shared;
  if (books == nullptr) {
    local = make_codebooks(cfg, mode, b_bits, rand);
    books = &local;
  }

  QuantizedCsi qg = quantize(books->interference, g);
  std::vector<QuantizedCsi> qh;
  qh.reserve(users.size());
  for (std::size_t k = 0; k < users.size(); ++k)
    qh.push_back(quantize(books->users[k], users[k]));

  out.beams = zfbf_beams(qg, qh, mode, rand);
  out.real.users = std::move(users);
  out.real.interference_channel =
      opts.delayed ? apply_delay(g, cfg.rho, rand) : g;
  out.real.alpha = cfg.alpha;
  out.quantization_error = qg.error;
  return out;
}

}  // namespace detail

// Mean interference power at the primary receiver for transmit power
// `power`.  extra["mean_a"] holds the mean quantization error of the
// interference link, extra["ratio"] the mean interference over the cap.
inline SimStats simulate_interference(const SystemConfig& cfg, int mode,
                                      int b_bits, double power,
                                      std::int64_t trials, std::uint64_t seed,
                                      const SimOptions& opts = {}) {
  cfg.validate();
  detail::check_mode_bits(mode, b_bits, cfg, "simulate_interference");
  if (trials < 1)
    throw std::invalid_argument("simulate_interference: trials must be positive");

  detail::CodebookSet shared;
  if (opts.fixed_codebooks) {
    std::mt19937_64 rand = trial_stream(seed, 0);
    shared = detail::make_codebooks(cfg, mode, b_bits, rand);
  }

  std::vector<double> values(static_cast<std::size_t>(trials));
  std::vector<double> errors(static_cast<std::size_t>(trials));
  for (std::int64_t t = 0; t < trials; ++t) {
    std::mt19937_64 rand = trial_stream(seed, static_cast<std::uint64_t>(t) + 1);
    detail::TrialOutcome out = detail::run_trial(
        cfg, mode, b_bits, opts, opts.fixed_codebooks ? &shared : nullptr,
        rand);
    values[static_cast<std::size_t>(t)] =
        interference(out.real, out.beams, power);
    errors[static_cast<std::size_t>(t)] = out.quantization_error;
  }

  SimStats stats;
  detail::fill_mean_stderr(values, stats);
  double mean_a = detail::pairwise_sum(errors, 0, errors.size()) /
                  static_cast<double>(errors.size());
  stats.extra["mean_a"] = {mean_a};
  stats.extra["ratio"] = {stats.mean / cfg.i_aic};
  return stats;
}

// Mean downlink sum rate at (mode, b_bits) with the transmit power set to
// the corresponding cap.
inline SimStats simulate_sum_rate(const SystemConfig& cfg, int mode,
                                  int b_bits, std::int64_t trials,
                                  std::uint64_t seed,
                                  const SimOptions& opts = {}) {
  cfg.validate();
  detail::check_mode_bits(mode, b_bits, cfg, "simulate_sum_rate");
  if (trials < 1)
    throw std::invalid_argument("simulate_sum_rate: trials must be positive");

  double power =
      opts.delayed ? power_cap_delayed(b_bits, cfg) : power_cap(b_bits, cfg);

  detail::CodebookSet shared;
  if (opts.fixed_codebooks) {
    std::mt19937_64 rand = trial_stream(seed, 0);
    shared = detail::make_codebooks(cfg, mode, b_bits, rand);
  }

  std::vector<double> values(static_cast<std::size_t>(trials));
  for (std::int64_t t = 0; t < trials; ++t) {
    std::mt19937_64 rand = trial_stream(seed, static_cast<std::uint64_t>(t) + 1);
    detail::TrialOutcome out = detail::run_trial(
        cfg, mode, b_bits, opts, opts.fixed_codebooks ? &shared : nullptr,
        rand);
    values[static_cast<std::size_t>(t)] =
        sum_rate(out.real, out.beams, power, cfg.sigma2);
  }

  SimStats stats;
  detail::fill_mean_stderr(values, stats);
  return stats;
}

// Empirical distribution of the first user's SINR at (mode, b_bits) with
// power at the cap.  stats.mean is the sample mean SINR.  extra["ks"]
// holds the exact Kolmogorov-Smirnov distance against the model CDF,
// extra["cdf_x"] a fixed evaluation grid, extra["cdf_emp"] and
// extra["cdf_model"] the two CDFs on that grid.
inline SimStats empirical_sinr_cdf(const SystemConfig& cfg, int mode,
                                   int b_bits, std::int64_t trials,
                                   std::uint64_t seed,
                                   const SimOptions& opts = {}) {
  cfg.validate();
  detail::check_mode_bits(mode, b_bits, cfg, "empirical_sinr_cdf");
  if (trials < 1)
    throw std::invalid_argument("empirical_sinr_cdf: trials must be positive");

  double power =
      opts.delayed ? power_cap_delayed(b_bits, cfg) : power_cap(b_bits, cfg);
  double nu = opts.delayed ? noise_coeff_delayed(mode, b_bits, cfg)
                           : noise_coeff_capped(mode, b_bits, cfg);

  detail::CodebookSet shared;
  if (opts.fixed_codebooks) {
    std::mt19937_64 rand = trial_stream(seed, 0);
    shared = detail::make_codebooks(cfg, mode, b_bits, rand);
  }

  std::vector<double> samples(static_cast<std::size_t>(trials));
  for (std::int64_t t = 0; t < trials; ++t) {
    std::mt19937_64 rand = trial_stream(seed, static_cast<std::uint64_t>(t) + 1);
    detail::TrialOutcome out = detail::run_trial(
        cfg, mode, b_bits, opts, opts.fixed_codebooks ? &shared : nullptr,
        rand);
    samples[static_cast<std::size_t>(t)] =
        sinr(out.real, out.beams, 0, power, cfg.sigma2);
  }

  SimStats stats;
  detail::fill_mean_stderr(samples, stats);

  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  double n = static_cast<double>(sorted.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    double model = sinr_cdf(sorted[i], mode, b_bits, cfg, nu);
    double hi = (static_cast<double>(i) + 1.0) / n - model;
    double lo = model - static_cast<double>(i) / n;
    ks = std::max(ks, std::max(hi, lo));
  }
  stats.extra["ks"] = {ks};

  std::vector<double> grid_x, grid_emp, grid_model;
  for (int i = 0; i <= 200; ++i) {
    double x = 0.1 * static_cast<double>(i);
    auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
    grid_x.push_back(x);
    grid_emp.push_back(static_cast<double>(it - sorted.begin()) / n);
    grid_model.push_back(sinr_cdf(x, mode, b_bits, cfg, nu));
  }
  stats.extra["cdf_x"] = std::move(grid_x);
  stats.extra["cdf_emp"] = std::move(grid_emp);
  stats.extra["cdf_model"] = std::move(grid_model);
  return stats;
}

}  // namespace cogfb
