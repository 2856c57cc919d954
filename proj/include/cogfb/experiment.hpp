// SPDX-License-Identifier: Apache-2.0
//
// Experiment driver: a flat key = value spec file selects a base
// configuration, one swept parameter, the evaluation engine and optional
// golden (M, B) pairs.  Running a spec produces one CSV row per sweep
// point with the exhaustive and relaxed optima, the utility in dB and,
// when the Monte Carlo engine is enabled, the simulated mean rate at the
// chosen operating point.

#pragma once

#include <cogfb/montecarlo.hpp>
#include <cogfb/optimizer.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cogfb {

enum class Engine { closed, mc, both };

inline Engine parse_engine(const std::string& s) {
  if (s == "closed") return Engine::closed;
  if (s == "mc") return Engine::mc;
  if (s == "both") return Engine::both;
  throw std::invalid_argument("engine must be closed, mc or both: " + s);
}

inline const char* engine_name(Engine e) {
  switch (e) {
    case Engine::closed: return "closed";
    case Engine::mc: return "mc";
    default: return "both";
  }
}

struct ExperimentSpec {
  std::string name;
  SystemConfig base;
  std::string sweep;      // i_aic | alpha | c_bits | mu | rho
  bool units_db = false;  // interpret sweep values as dB (i_aic only)
  std::vector<double> values;
  Engine engine = Engine::closed;
  std::int64_t trials = 100000;
  std::uint64_t seed = 1;
  std::vector<std::pair<int, int>> golden;  // expected (M, B) per point
  bool baseline = false;  // also evaluate the fixed full-multiplexing scheme

  void validate() const {
    std::vector<std::string> bad;
    if (name.empty()) bad.push_back("name is required");
    static const std::set<std::string> sweeps = {"i_aic", "alpha", "c_bits",
                                                 "mu", "rho"};
    if (!sweeps.count(sweep))
      bad.push_back("sweep must be one of i_aic, alpha, c_bits, mu, rho");
    if (units_db && sweep != "i_aic")
      bad.push_back("units = db is only valid for the i_aic sweep");
    if (values.empty()) bad.push_back("values must be non-empty");
    if (sweep == "c_bits") {
      for (double v : values)
        if (v != std::floor(v) || v < 0)
          bad.push_back("c_bits sweep values must be non-negative integers");
    }
    if (trials < 1) bad.push_back("trials must be positive");
    if (!golden.empty() && golden.size() != values.size())
      bad.push_back("golden must list one M:B pair per sweep value");
    try {
      base.validate();
    } catch (const std::invalid_argument& e) {
      bad.push_back(e.what());
    }
    if (!bad.empty()) {
      std::string msg = "invalid experiment spec";
      for (const auto& b : bad) msg += "; " + b;
      throw std::invalid_argument(msg);
    }
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline double parse_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument(key + ": not a number: " + v);
  }
  if (pos != v.size())
    throw std::invalid_argument(key + ": trailing characters: " + v);
  return x;
}

inline long long parse_int(const std::string& key, const std::string& v) {
  double x = parse_double(key, v);
  if (x != std::floor(x))
    throw std::invalid_argument(key + ": not an integer: " + v);
  return static_cast<long long>(x);
}

}  // namespace detail

// Parse a spec from text.  Lines are `key = value`; blank lines and lines
// starting with # are skipped.  Unknown or duplicate keys are errors.
inline ExperimentSpec parse_spec_text(const std::string& text) {
  ExperimentSpec spec;
  std::set<std::string> seen;
  std::vector<std::string> errors;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = detail::trim(line);
    if (s.empty() || s[0] == '#') continue;
    std::size_t eq = s.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    std::string key = detail::trim(s.substr(0, eq));
    std::string value = detail::trim(s.substr(eq + 1));
    if (key.empty() || value.empty()) {
      errors.push_back("line " + std::to_string(lineno) + ": empty key or value");
      continue;
    }
    if (!seen.insert(key).second) {
      errors.push_back("duplicate key: " + key);
      continue;
    }
    try {
      if (key == "name") {
        spec.name = value;
      } else if (key == "n_t") {
        spec.base.n_t = static_cast<int>(detail::parse_int(key, value));
      } else if (key == "c_bits") {
        spec.base.c_bits = static_cast<int>(detail::parse_int(key, value));
      } else if (key == "b_max") {
        spec.base.b_max = static_cast<int>(detail::parse_int(key, value));
      } else if (key == "mu") {
        spec.base.mu = detail::parse_double(key, value);
      } else if (key == "alpha") {
        spec.base.alpha = detail::parse_double(key, value);
      } else if (key == "sigma2") {
        spec.base.sigma2 = detail::parse_double(key, value);
      } else if (key == "i_aic") {
        spec.base.i_aic = detail::parse_double(key, value);
      } else if (key == "rho") {
        spec.base.rho = detail::parse_double(key, value);
      } else if (key == "sweep") {
        spec.sweep = value;
      } else if (key == "units") {
        if (value == "db")
          spec.units_db = true;
        else if (value == "linear")
          spec.units_db = false;
        else
          errors.push_back("units must be db or linear: " + value);
      } else if (key == "values") {
        std::istringstream vs(value);
        std::string tok;
        while (vs >> tok)
          spec.values.push_back(detail::parse_double(key, tok));
      } else if (key == "engine") {
        spec.engine = parse_engine(value);
      } else if (key == "trials") {
        spec.trials = detail::parse_int(key, value);
      } else if (key == "seed") {
        spec.seed = static_cast<std::uint64_t>(detail::parse_int(key, value));
      } else if (key == "golden") {
        std::istringstream vs(value);
        std::string tok;
        while (vs >> tok) {
          std::size_t colon = tok.find(':');
          if (colon == std::string::npos)
            throw std::invalid_argument("golden entries are M:B pairs: " + tok);
          int m = static_cast<int>(
              detail::parse_int("golden", tok.substr(0, colon)));
          int b = static_cast<int>(
              detail::parse_int("golden", tok.substr(colon + 1)));
          spec.golden.emplace_back(m, b);
        }
      } else if (key == "baseline") {
        if (value == "fixed")
          spec.baseline = true;
        else if (value == "none")
          spec.baseline = false;
        else
          errors.push_back("baseline must be fixed or none: " + value);
      } else {
        errors.push_back("unknown key: " + key);
      }
    } catch (const std::invalid_argument& e) {
      errors.push_back(e.what());
    }
  }
  if (!errors.empty()) {
    std::string msg = "spec parse failed";
    for (const auto& e : errors) msg += "; " + e;
    throw std::invalid_argument(msg);
  }
  spec.validate();
  return spec;
}

inline ExperimentSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spec file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec_text(buf.str());
}

// Base configuration with the swept parameter applied.  dB values are
// converted to linear here and nowhere else.
inline SystemConfig apply_sweep(const ExperimentSpec& spec, double value) {
  SystemConfig cfg = spec.base;
  if (spec.sweep == "i_aic")
    cfg.i_aic = spec.units_db ? std::pow(10.0, value / 10.0) : value;
  else if (spec.sweep == "alpha")
    cfg.alpha = value;
  else if (spec.sweep == "c_bits")
    cfg.c_bits = static_cast<int>(value);
  else if (spec.sweep == "mu")
    cfg.mu = value;
  else if (spec.sweep == "rho")
    cfg.rho = value;
  else
    throw std::invalid_argument("unknown sweep: " + spec.sweep);
  return cfg;
}

struct SweepRow {
  double sweep_value = 0.0;  // as written in the spec (dB or linear)
  int m_exh = 0;
  int b_exh = 0;
  double fuf_exh = 0.0;
  int m_rel = 0;
  int b_rel = 0;
  double fuf_rel = 0.0;
  double fuf_db = 0.0;
  double sim_rate_mean = std::numeric_limits<double>::quiet_NaN();
  double sim_rate_stderr = std::numeric_limits<double>::quiet_NaN();
};

struct ExperimentResult {
  ExperimentSpec spec;
  std::vector<SweepRow> rows;
  // Fixed-scheme rate per sweep point when spec.baseline is set: all n_t
  // users served, no purchased interference feedback, power at the B = 0 cap.
  std::vector<double> baseline_fixed;
};

// Average rate of the fixed benchmark: M = n_t users, plain zero forcing
// among the users only, transmit power at the B = 0 cap.
inline double fixed_scheme_rate(const SystemConfig& cfg) {
  cfg.validate();
  double p0 = power_cap(0, cfg);
  return detail::rate_closed_form(cfg.n_t, cfg.sigma2 * cfg.n_t / p0, cfg);
}

inline ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  ExperimentResult result;
  result.spec = spec;
  result.rows.reserve(spec.values.size());
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    SystemConfig cfg = apply_sweep(spec, spec.values[i]);
    bool delayed = cfg.rho < 1.0;
    OptResult exh = optimize_exhaustive(cfg, delayed);
    OptResult rel = optimize_relaxed(cfg, delayed);

    SweepRow row;
    row.sweep_value = spec.values[i];
    row.m_exh = exh.mode;
    row.b_exh = exh.b_bits;
    row.fuf_exh = exh.utility;
    row.m_rel = rel.mode;
    row.b_rel = rel.b_bits;
    row.fuf_rel = rel.utility;
    row.fuf_db = exh.utility > 0.0
                     ? 10.0 * std::log10(exh.utility)
                     : std::numeric_limits<double>::quiet_NaN();

    if (spec.engine == Engine::mc || spec.engine == Engine::both) {
      SimOptions opts;
      opts.delayed = delayed;
      SimStats stats = simulate_sum_rate(
          cfg, exh.mode, exh.b_bits, spec.trials,
          spec.seed + 1000003ULL * static_cast<std::uint64_t>(i), opts);
      row.sim_rate_mean = stats.mean;
      row.sim_rate_stderr = stats.std_error;
    }
    result.rows.push_back(row);

    if (spec.baseline) result.baseline_fixed.push_back(fixed_scheme_rate(cfg));
  }
  return result;
}

namespace detail {

inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace detail

inline constexpr const char* kCsvHeader =
    "sweep_value_dB_or_linear,M_opt_exh,B_opt_exh,fuf_exh,M_opt_rel,"
    "B_opt_rel,fuf_rel,fuf_dB,sim_rate_mean,sim_rate_stderr";

inline std::string to_csv(const ExperimentResult& result) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const auto& r : result.rows) {
    out += detail::format_double(r.sweep_value);
    out += ',' + std::to_string(r.m_exh);
    out += ',' + std::to_string(r.b_exh);
    out += ',' + detail::format_double(r.fuf_exh);
    out += ',' + std::to_string(r.m_rel);
    out += ',' + std::to_string(r.b_rel);
    out += ',' + detail::format_double(r.fuf_rel);
    out += ',' + detail::format_double(r.fuf_db);
    out += ',' + detail::format_double(r.sim_rate_mean);
    out += ',' + detail::format_double(r.sim_rate_stderr);
    out += '\n';
  }
  return out;
}

inline std::string baseline_to_csv(const ExperimentResult& result) {
  std::string out = "sweep_value_dB_or_linear,fuf_proposed,rate_fixed,gap\n";
  for (std::size_t i = 0; i < result.baseline_fixed.size(); ++i) {
    const auto& r = result.rows[i];
    out += detail::format_double(r.sweep_value);
    out += ',' + detail::format_double(r.fuf_exh);
    out += ',' + detail::format_double(result.baseline_fixed[i]);
    out += ',' + detail::format_double(r.fuf_exh - result.baseline_fixed[i]);
    out += '\n';
  }
  return out;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

// Golden check: exhaustive (M, B) must match the spec goldens and the
// relaxed result must agree with the exhaustive one at every point.
// Returns one message per mismatch; empty means pass.
inline std::vector<std::string> verify_goldens(const ExperimentResult& result) {
  std::vector<std::string> failures;
  const auto& spec = result.spec;
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const auto& r = result.rows[i];
    if (!spec.golden.empty()) {
      auto [gm, gb] = spec.golden[i];
      if (r.m_exh != gm || r.b_exh != gb) {
        std::ostringstream msg;
        msg << spec.name << " value " << detail::format_double(r.sweep_value)
            << ": exhaustive (" << r.m_exh << "," << r.b_exh
            << ") != golden (" << gm << "," << gb << ")";
        failures.push_back(msg.str());
      }
    }
    if (r.m_rel != r.m_exh || r.b_rel != r.b_exh) {
      std::ostringstream msg;
      msg << spec.name << " value " << detail::format_double(r.sweep_value)
          << ": relaxed (" << r.m_rel << "," << r.b_rel
          << ") != exhaustive (" << r.m_exh << "," << r.b_exh << ")";
      failures.push_back(msg.str());
    }
  }
  return failures;
}

}  // namespace cogfb
