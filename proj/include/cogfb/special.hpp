// SPDX-License-Identifier: Apache-2.0
//
// Special functions used by the closed-form rate expressions: the
// exponential integral E1 and the two auxiliary integrals
//
//   i2(x, y, z) = integral_0^inf exp(-x t) / (t + y)^z dt
//   i1(x, y, z) = integral_0^inf exp(-x t) / ((t + 1) (t + y)^z) dt
//
// both with closed forms in terms of exp(xy) E1(xy).  The scaled form
// exp(v) E1(v) is computed directly so large v never overflows.

#pragma once

#include <boost/math/quadrature/exp_sinh.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cogfb {

namespace detail {

inline constexpr double kEulerGamma = 0.5772156649015328606;

// E1(x) for 0 < x <= 1 by the alternating power series
// E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k * k!).
inline double e1_series(double x) {
  double sum = 0.0;
  double term = x;  // k = 1
  for (int k = 1; k <= 60; ++k) {
    sum += term;
    if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
    term *= -x * k / (static_cast<double>(k + 1) * (k + 1));
  }
  return -kEulerGamma - std::log(x) + sum;
}

// exp(x) E1(x) for x > 1 by the continued fraction
// 1 / (x + 1 - 1^2 / (x + 3 - 2^2 / (x + 5 - ...))), modified Lentz.
inline double e1_scaled_cf(double x) {
  const double tiny = 1e-300;
  double f = tiny;
  double c = f;
  double d = 0.0;
  for (int j = 1; j <= 500; ++j) {
    double a = (j == 1) ? 1.0 : -static_cast<double>(j - 1) * (j - 1);
    double b = x + 2.0 * j - 1.0;
    d = b + a * d;
    if (d == 0.0) d = tiny;
    c = b + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return f;
}

}  // namespace detail

// exp(x) E1(x), stable for all x > 0 (no overflow at large x).
inline double exp_e1_scaled(double x) {
  if (!(x > 0.0)) throw std::domain_error("exp_e1_scaled: requires x > 0");
  if (x <= 1.0) return std::exp(x) * detail::e1_series(x);
  return detail::e1_scaled_cf(x);
}

// Exponential integral E1(x) = integral_x^inf exp(-t)/t dt, x > 0.
// Power series below x = 1, continued fraction above; absolute error
// target 1e-12 over [1e-3, 50].
inline double exp_integral_e1(double x) {
  if (!(x > 0.0)) throw std::domain_error("exp_integral_e1: requires x > 0");
  if (x <= 1.0) return detail::e1_series(x);
  return detail::e1_scaled_cf(x) * std::exp(-x);
}

// Adaptive quadrature over [0, inf) for exponentially decaying integrands.
template <typename F>
double integrate_halfline(F&& f, double tol = 1e-10) {
  boost::math::quadrature::exp_sinh<double> integrator;
  double error = 0.0;
  double value = integrator.integrate(std::forward<F>(f), tol, &error);
  if (!std::isfinite(value))
    throw std::runtime_error("integrate_halfline: quadrature diverged");
  return value;
}

// i2(x, y, z) = integral_0^inf exp(-x t) / (t + y)^z dt for x, y > 0 and
// integer z >= 1.  z = 1 reduces to exp(xy) E1(xy); higher z mixes a short
// rational sum with the same scaled exponential integral.
inline double i2(double x, double y, int z) {
  if (!(x > 0.0) || !(y > 0.0)) throw std::domain_error("i2: x, y must be > 0");
  if (z < 1) throw std::domain_error("i2: z must be >= 1");
  if (z == 1) return exp_e1_scaled(x * y);
  // factorial(z-1) stays exact in double up to z = 21; rate formulas use
  // z = M - 1 which is tiny.
  double fact_zm1 = 1.0;
  for (int k = 2; k <= z - 1; ++k) fact_zm1 *= k;
  double sum = 0.0;
  double fact_km1 = 1.0;  // (k-1)!
  for (int k = 1; k <= z - 1; ++k) {
    sum += (fact_km1 / fact_zm1) * std::pow(-x, z - k - 1) / std::pow(y, k);
    fact_km1 *= k;
  }
  return sum + std::pow(-x, z - 1) / fact_zm1 * exp_e1_scaled(x * y);
}

// i1(x, y, z) = integral_0^inf exp(-x t) / ((t + 1) (t + y)^z) dt for
// x, y > 0 and integer z >= 1, via the partial-fraction expansion
//   sum_{i=1..z} (-1)^{i-1} (1-y)^{-i} i2(x, y, z-i+1) + (y-1)^{-z} i2(x, 1, 1).
// The expansion is singular at y = 1 and its cancellation error grows like
// eps / |y - 1|^z, so |y - 1| < 1e-6^(1/z) falls back to direct quadrature
// of the defining integral; that window keeps the expansion's relative
// error near eps / 1e-6.
inline double i1(double x, double y, int z) {
  if (!(x > 0.0) || !(y > 0.0)) throw std::domain_error("i1: x, y must be > 0");
  if (z < 1) throw std::domain_error("i1: z must be >= 1");
  if (std::abs(y - 1.0) < std::pow(1e-6, 1.0 / z)) {
    return integrate_halfline([x, y, z](double t) {
      return std::exp(-x * t) / ((t + 1.0) * std::pow(t + y, z));
    });
  }
  double sum = 0.0;
  double pow1my = 1.0;  // (1-y)^i accumulates
  double sign = 1.0;    // (-1)^{i-1}
  for (int i = 1; i <= z; ++i) {
    pow1my *= (1.0 - y);
    sum += sign / pow1my * i2(x, y, z - i + 1);
    sign = -sign;
  }
  return sum + std::pow(y - 1.0, -z) * i2(x, 1.0, 1);
}

}  // namespace cogfb
