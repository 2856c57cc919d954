// SPDX-License-Identifier: Apache-2.0
//
// Deterministic random streams.  Every Monte Carlo trial owns an
// independent generator derived from (scenario seed, trial index), so
// results do not depend on execution order and identical seeds reproduce
// identical statistics bit for bit.  Gaussian variates use an explicit
// Box-Muller transform instead of std::normal_distribution, whose output
// sequence is implementation-defined.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace cogfb {

namespace detail {

// splitmix64 step; used only to expand seeds, never as the main generator.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// Independent stream for one trial.  stream_index 0 is reserved for
// shared state (e.g. fixed codebooks); trials use indices 1..n.
inline std::mt19937_64 trial_stream(std::uint64_t seed,
                                    std::uint64_t stream_index) {
  std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (stream_index + 1));
  std::seed_seq seq{static_cast<std::uint32_t>(detail::splitmix64(s)),
                    static_cast<std::uint32_t>(detail::splitmix64(s) >> 32),
                    static_cast<std::uint32_t>(detail::splitmix64(s)),
                    static_cast<std::uint32_t>(detail::splitmix64(s) >> 32)};
  return std::mt19937_64(seq);
}

// Uniform in (0, 1]; never returns 0 so log() below is safe.
inline double uniform_open(std::mt19937_64& gen) {
  return (static_cast<double>(gen() >> 11) + 1.0) * 0x1p-53;
}

// One standard circularly-symmetric complex Gaussian sample, CN(0, 1):
// real and imaginary parts are independent N(0, 1/2).  A single
// Box-Muller pair yields both components.
inline std::complex<double> complex_gaussian(std::mt19937_64& gen) {
  double u1 = uniform_open(gen);
  double u2 = uniform_open(gen);
  double r = std::sqrt(-std::log(u1));  // includes the 1/sqrt(2) scaling
  double phi = 2.0 * M_PI * u2;
  return {r * std::cos(phi), r * std::sin(phi)};
}

// One standard real Gaussian N(0, 1).
inline double real_gaussian(std::mt19937_64& gen) {
  double u1 = uniform_open(gen);
  double u2 = uniform_open(gen);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace cogfb
