// SPDX-License-Identifier: Apache-2.0
//
// Fading channel generation, random vector quantization (RVQ) of channel
// directions, and the Gauss-Markov feedback-delay model.  A codebook is a
// set of 2^bits independent isotropic unit vectors; quantization keeps the
// codeword best aligned with the channel direction and records the
// quantization error magnitude together with the residual direction, so
// the direction can be reconstructed up to a global phase.

#pragma once

#include <cogfb/rng.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

namespace cogfb {

using ComplexVector = Eigen::VectorXcd;

// One i.i.d. CN(0, 1) channel vector of dimension n_t.
inline ComplexVector sample_channel(int n_t, std::mt19937_64& rand) {
  if (n_t < 2) throw std::invalid_argument("sample_channel: n_t < 2");
  ComplexVector v(n_t);
  for (int i = 0; i < n_t; ++i) v(i) = complex_gaussian(rand);
  return v;
}

struct Codebook {
  int bits = 0;
  std::vector<ComplexVector> codewords;  // 2^bits unit-norm vectors

  int dimension() const {
    return codewords.empty() ? 0 : static_cast<int>(codewords[0].size());
  }
};

// RVQ codebook: 2^bits independent isotropic unit-norm vectors.
inline Codebook generate_codebook(int n_t, int bits, std::mt19937_64& rand) {
  if (bits < 0) throw std::invalid_argument("generate_codebook: bits < 0");
  Codebook cb;
  cb.bits = bits;
  cb.codewords.reserve(std::size_t{1} << bits);
  for (std::size_t i = 0; i < (std::size_t{1} << bits); ++i) {
    ComplexVector v = sample_channel(n_t, rand);
    cb.codewords.push_back(v / v.norm());
  }
  return cb;
}

// Outcome of quantizing one channel direction.
struct QuantizedCsi {
  int index = 0;                      // chosen codeword
  ComplexVector codeword;             // the unit vector fed back
  double error = 0.0;                 // a = 1 - |codeword^H direction|^2
  ComplexVector residual_direction;   // unit vector s orthogonal to codeword
};

namespace detail {

// Any deterministic unit vector orthogonal to the unit vector c.
inline ComplexVector orthogonal_unit(const ComplexVector& c) {
  int pivot = 0;
  for (int i = 1; i < c.size(); ++i)
    if (std::abs(c(i)) < std::abs(c(pivot))) pivot = i;
  ComplexVector e = ComplexVector::Zero(c.size());
  e(pivot) = 1.0;
  ComplexVector r = e - c * (c.dot(e));  // Eigen dot conjugates the left side
  return r / r.norm();
}

}  // namespace detail

// Select the codeword maximizing |c^H direction|^2 (ties to the lowest
// index) and decompose the direction as
//   sqrt(1 - a) * codeword + sqrt(a) * s  =  direction (up to global phase)
// with s unit norm and orthogonal to the codeword.
inline QuantizedCsi quantize(const Codebook& codebook,
                             const ComplexVector& channel) {
  if (codebook.dimension() != channel.size())
    throw std::invalid_argument("quantize: dimension mismatch");
  double norm = channel.norm();
  if (norm == 0.0)
    throw std::invalid_argument("quantize: zero channel vector");
  ComplexVector direction = channel / norm;

  QuantizedCsi out;
  double best = -1.0;
  for (std::size_t i = 0; i < codebook.codewords.size(); ++i) {
    double align = std::norm(codebook.codewords[i].dot(direction));
    if (align > best) {
      best = align;
      out.index = static_cast<int>(i);
    }
  }
  out.codeword = codebook.codewords[out.index];
  out.error = std::min(1.0, std::max(0.0, 1.0 - best));

  // overlap = codeword^H direction = |overlap| e^{i phi}; removing the
  // phase from the perpendicular component makes the reconstruction land
  // on e^{-i phi} * direction.
  std::complex<double> overlap = out.codeword.dot(direction);
  if (out.error <= 0.0) {
    out.residual_direction = detail::orthogonal_unit(out.codeword);
  } else if (std::abs(overlap) == 0.0) {
    out.residual_direction = direction;  // fully orthogonal, phase moot
  } else {
    std::complex<double> phase = overlap / std::abs(overlap);
    ComplexVector perp = direction - out.codeword * overlap;
    out.residual_direction = (perp / phase) / perp.norm();
  }
  return out;
}

// Gauss-Markov delay model: the current channel given an outdated one is
// sqrt(rho) * outdated + sqrt(1 - rho) * fresh CN(0, I).
inline ComplexVector apply_delay(const ComplexVector& outdated, double rho,
                                 std::mt19937_64& rand) {
  if (!(rho >= 0.0 && rho <= 1.0))
    throw std::invalid_argument("apply_delay: rho outside [0, 1]");
  if (rho == 1.0) return outdated;
  ComplexVector fresh = sample_channel(static_cast<int>(outdated.size()), rand);
  return std::sqrt(rho) * outdated + std::sqrt(1.0 - rho) * fresh;
}

}  // namespace cogfb
