// SPDX-License-Identifier: Apache-2.0
//
// Zero-forcing beams in the null space of the quantized complementary
// channel matrix, and the per-realization link metrics they induce:
// interference at the primary receiver, per-user SINR, and sum rate.
// Beam m is orthogonal to the quantized interference channel and to the
// quantized channels of every other served user; when several null-space
// directions remain, one is drawn isotropically.

#pragma once

#include <cogfb/channel.hpp>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace cogfb {

struct BeamSet {
  std::vector<ComplexVector> beams;  // M unit-norm transmit beams
  int mode = 0;                      // M, number of served users
};

// One slot of ground truth: the users' channels, the small-scale
// interference channel toward the primary receiver, and its path-loss
// ratio alpha.
struct ChannelRealization {
  std::vector<ComplexVector> users;
  ComplexVector interference_channel;
  double alpha = 0.0;
};

// Build the M zero-forcing beams from quantized CSI.  Beam m spans the
// orthogonal complement of [g_hat, h_hat_k for k != m], obtained from the
// left singular vectors of that n_t x M matrix; singular values below
// 1e-10 of the largest are treated as zero when counting rank.
inline BeamSet zfbf_beams(const QuantizedCsi& quantized_g,
                          const std::vector<QuantizedCsi>& quantized_users,
                          int mode, std::mt19937_64& rand) {
  int m_users = static_cast<int>(quantized_users.size());
  if (mode != m_users)
    throw std::invalid_argument("zfbf_beams: mode != number of users");
  int n_t = static_cast<int>(quantized_g.codeword.size());
  if (mode < 2 || mode > n_t - 1)
    throw std::invalid_argument("zfbf_beams: mode outside [2, n_t - 1]");

  BeamSet set;
  set.mode = mode;
  set.beams.reserve(mode);
  Eigen::MatrixXcd constraints(n_t, mode);
  for (int m = 0; m < mode; ++m) {
    constraints.col(0) = quantized_g.codeword;
    int col = 1;
    for (int k = 0; k < mode; ++k)
      if (k != m) constraints.col(col++) = quantized_users[k].codeword;

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(constraints, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    int rank = 0;
    double cutoff = 1e-10 * sv(0);
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > cutoff) ++rank;
    int null_dim = n_t - rank;
    if (null_dim <= 0)
      throw std::runtime_error("zfbf_beams: degenerate geometry, empty null space");

    // Isotropic direction inside the null space: Gaussian coordinates on
    // the null basis, normalized.
    ComplexVector w = ComplexVector::Zero(n_t);
    for (int i = 0; i < null_dim; ++i)
      w += svd.matrixU().col(n_t - null_dim + i) * complex_gaussian(rand);
    set.beams.push_back(w / w.norm());
  }
  return set;
}

// Interference power received by the primary: (P/M) alpha sum_m |g^H w_m|^2
// with g the true (delay-mismatched if applicable) interference channel.
inline double interference(const ChannelRealization& real, const BeamSet& beams,
                           double power) {
  if (power < 0.0) throw std::invalid_argument("interference: power < 0");
  double sum = 0.0;
  for (const auto& w : beams.beams)
    sum += std::norm(real.interference_channel.dot(w));
  return power / beams.mode * real.alpha * sum;
}

// Per-user SINR with equal power split:
// |h_m^H w_m|^2 / (sigma2 M / P + sum_{k != m} |h_m^H w_k|^2).
inline double sinr(const ChannelRealization& real, const BeamSet& beams,
                   int user_index, double power, double noise) {
  if (user_index < 0 || user_index >= beams.mode)
    throw std::invalid_argument("sinr: bad user index");
  if (!(noise > 0.0)) throw std::invalid_argument("sinr: noise <= 0");
  const ComplexVector& h = real.users[user_index];
  double signal = std::norm(h.dot(beams.beams[user_index]));
  double inter = 0.0;
  for (int k = 0; k < beams.mode; ++k)
    if (k != user_index) inter += std::norm(h.dot(beams.beams[k]));
  return signal / (noise * beams.mode / power + inter);
}

// Instantaneous sum rate sum_m log2(1 + SINR_m) in bits/s/Hz.
inline double sum_rate(const ChannelRealization& real, const BeamSet& beams,
                       double power, double noise) {
  if (power == 0.0) return 0.0;
  double rate = 0.0;
  for (int m = 0; m < beams.mode; ++m)
    rate += std::log2(1.0 + sinr(real, beams, m, power, noise));
  return rate;
}

}  // namespace cogfb
