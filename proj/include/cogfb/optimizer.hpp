// SPDX-License-Identifier: Apache-2.0
//
// Joint selection of the transmission mode M and purchased feedback bits
// B.  Three routes: exhaustive evaluation of the utility lattice, a
// continuous relaxation solved by multi-start projected coordinate ascent
// followed by integer rounding, and closed-regime shortcuts for extreme
// parameter values.  Ties always break toward smaller B, then smaller M,
// since feedback is the priced resource.

#pragma once

#include <cogfb/closed_form.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

namespace cogfb {

enum class OptMethod { exhaustive, relaxed, asymptotic };

struct OptResult {
  int mode = 0;
  int b_bits = 0;
  double utility = 0.0;
  UtilityGrid grid;              // exact integer utilities for audit
  OptMethod method = OptMethod::exhaustive;
  bool negative_utility = false; // best achievable utility is negative
  bool fallback_warning = false; // relaxed ascent failed; exhaustive used
};

// Exhaustive scan of the (n_t - 2) x (b_max + 1) lattice.  Scanning B in
// the outer loop and accepting only strict improvements realizes the
// smaller-B-then-smaller-M tie break.
inline OptResult optimize_exhaustive(const SystemConfig& cfg,
                                     bool delayed = false) {
  cfg.validate();
  OptResult res;
  res.method = OptMethod::exhaustive;
  res.grid = utility_grid(cfg, delayed);
  bool first = true;
  for (int b = 0; b <= cfg.b_max; ++b) {
    for (int m = 2; m <= cfg.n_t - 1; ++m) {
      double f = res.grid.at(m, b);
      if (first || f > res.utility) {
        res.mode = m;
        res.b_bits = b;
        res.utility = f;
        first = false;
      }
    }
  }
  res.negative_utility = res.utility < 0.0;
  return res;
}

namespace detail {

// One projected coordinate-ascent run on the continuous utility surface
// from a given interior start.  Returns true when the objective change
// fell below tolerance within the sweep budget.
template <typename F>
bool coordinate_ascent(F&& f, double lo_m, double hi_m, double lo_b,
                       double hi_b, double& m, double& b, double& value) {
  value = f(m, b);
  const double grad_h = 1e-4;
  for (int sweep = 0; sweep < 60; ++sweep) {
    double before = value;
    for (int coord = 0; coord < 2; ++coord) {
      double lo = coord == 0 ? lo_m : lo_b;
      double hi = coord == 0 ? hi_m : hi_b;
      double& x = coord == 0 ? m : b;
      if (hi - lo < 1e-12) continue;
      auto eval = [&](double v) { return coord == 0 ? f(v, b) : f(m, v); };
      double xp = std::min(hi, x + grad_h);
      double xm = std::max(lo, x - grad_h);
      if (xp == xm) continue;
      double grad = (eval(xp) - eval(xm)) / (xp - xm);
      if (grad == 0.0) continue;
      double dir = grad > 0.0 ? 1.0 : -1.0;
      double step = (hi - lo) / 4.0;
      while (step > 1e-5) {
        double cand = std::clamp(x + dir * step, lo, hi);
        if (cand != x) {
          double fc = eval(cand);
          if (fc > value) {
            x = cand;
            value = fc;
            break;
          }
        }
        step *= 0.5;
      }
    }
    if (value - before < 1e-6) return true;
  }
  return false;
}

}  // namespace detail

// Continuous relaxation: maximize the real-valued utility over the box
// [2, n_t-1] x [0, b_max] from five deterministic starts, then evaluate
// the exact integer utility at the rounded corner candidates (plus every
// integer mode at the rounded B values, a cheap repair that keeps the
// result on the exhaustive optimum when the continuous maximizer rounds
// across a mode boundary).
inline OptResult optimize_relaxed(const SystemConfig& cfg,
                                  bool delayed = false) {
  cfg.validate();
  const double lo_m = 2.0, hi_m = cfg.n_t - 1.0;
  const double lo_b = 0.0, hi_b = cfg.b_max;

  auto objective = [&cfg, delayed](double m, double b) {
    return utility_relaxed(m, b, cfg, delayed);
  };

  const std::array<std::pair<double, double>, 5> starts = {{
      {0.25, 0.25}, {0.25, 0.75}, {0.75, 0.25}, {0.75, 0.75}, {0.5, 0.5}}};

  double best_m = lo_m, best_b = lo_b;
  double best_val = -std::numeric_limits<double>::infinity();
  bool converged_any = false;
  for (const auto& [fm, fb] : starts) {
    double m = lo_m + fm * (hi_m - lo_m);
    double b = lo_b + fb * (hi_b - lo_b);
    double value = 0.0;
    bool ok = detail::coordinate_ascent(objective, lo_m, hi_m, lo_b, hi_b, m,
                                        b, value);
    converged_any = converged_any || ok;
    if (value > best_val) {
      best_val = value;
      best_m = m;
      best_b = b;
    }
  }

  OptResult res;
  res.method = OptMethod::relaxed;
  res.grid = utility_grid(cfg, delayed);
  if (!converged_any) {
    OptResult fallback = optimize_exhaustive(cfg, delayed);
    fallback.method = OptMethod::relaxed;
    fallback.fallback_warning = true;
    return fallback;
  }

  auto clamp_mode = [&](int m) {
    return std::clamp(m, 2, cfg.n_t - 1);
  };
  auto clamp_bits = [&](int b) { return std::clamp(b, 0, cfg.b_max); };

  std::vector<std::pair<int, int>> candidates;
  auto push = [&candidates](int m, int b) {
    auto cand = std::make_pair(m, b);
    if (std::find(candidates.begin(), candidates.end(), cand) ==
        candidates.end())
      candidates.push_back(cand);
  };
  int mf = clamp_mode(static_cast<int>(std::floor(best_m)));
  int mc = clamp_mode(static_cast<int>(std::ceil(best_m)));
  int bf = clamp_bits(static_cast<int>(std::floor(best_b)));
  int bc = clamp_bits(static_cast<int>(std::ceil(best_b)));
  push(mf, bf);
  push(mf, bc);
  push(mc, bf);
  push(mc, bc);
  for (int m = 2; m <= cfg.n_t - 1; ++m) {
    push(m, bf);
    push(m, bc);
  }

  bool first = true;
  for (int b = 0; b <= cfg.b_max; ++b) {
    for (int m = 2; m <= cfg.n_t - 1; ++m) {
      if (std::find(candidates.begin(), candidates.end(),
                    std::make_pair(m, b)) == candidates.end())
        continue;
      double f = res.grid.at(m, b);
      if (first || f > res.utility) {
        res.mode = m;
        res.b_bits = b;
        res.utility = f;
        first = false;
      }
    }
  }
  res.negative_utility = res.utility < 0.0;
  return res;
}

// Parameter cutoffs for the closed-regime shortcuts.
struct RegimeThresholds {
  double eta_high = 1e3;  // interference-limited beyond this
  double eta_low = 1e-3;  // constraint never binds below this
  int c_large = 20;       // user CSI effectively perfect beyond this
};

// Closed-regime shortcut.  Returns (M, B) when a regime test fires:
// full multiplexing with no purchased feedback when the system is
// interference-limited (large eta) or inter-user interference is
// negligible (large C); B = 0 with a one-dimensional mode search when the
// constraint never binds (small eta).  Empty when no regime applies.
inline std::optional<std::pair<int, int>> select_asymptotic_regime(
    const SystemConfig& cfg, const RegimeThresholds& thresholds = {}) {
  cfg.validate();
  double eta = cfg.eta();
  if (eta >= thresholds.eta_high) return std::make_pair(cfg.n_t - 1, 0);
  if (cfg.c_bits >= thresholds.c_large) return std::make_pair(cfg.n_t - 1, 0);
  if (eta <= thresholds.eta_low) {
    double p0 = power_cap(0, cfg);
    int best_m = 2;
    double best = -std::numeric_limits<double>::infinity();
    for (int m = 2; m <= cfg.n_t - 1; ++m) {
      double r = asymptotic_rate_fixed_power(m, p0, cfg);
      if (r > best) {
        best = r;
        best_m = m;
      }
    }
    return std::make_pair(best_m, 0);
  }
  return std::nullopt;
}

}  // namespace cogfb
