// SPDX-License-Identifier: Apache-2.0

#include <cogfb/rng.hpp>
#include <cogfb/special.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

namespace {

using cogfb::exp_e1_scaled;
using cogfb::exp_integral_e1;
using cogfb::i1;
using cogfb::i2;
using cogfb::integrate_halfline;

// Reference values computed independently with 50-digit arithmetic.
TEST(Special, ExponentialIntegralKnownValues) {
  EXPECT_NEAR(exp_integral_e1(0.5), 0.5597735947761608, 1e-15);
  EXPECT_NEAR(exp_integral_e1(1.0), 0.21938393439552027, 1e-15);
  EXPECT_NEAR(exp_integral_e1(10.0), 4.15696892968532e-06, 1e-19);
}

TEST(Special, ExponentialIntegralMatchesQuadrature) {
  for (double x : {1e-3, 0.01, 0.1, 0.5, 0.999, 1.0, 1.001, 2.0, 5.0, 20.0}) {
    double scaled =
        integrate_halfline([x](double t) { return std::exp(-x * t) / (1.0 + t); });
    EXPECT_NEAR(exp_integral_e1(x), std::exp(-x) * scaled, 1e-12) << "x=" << x;
  }
}

TEST(Special, ScaledFormAvoidsUnderflow) {
  // e^x E1(x) ~ 1/x (1 - 1/x + ...) for large x; the unscaled value
  // underflows past x ~ 745 but the scaled one must stay meaningful.
  double v = exp_e1_scaled(700.0);
  EXPECT_GT(v, 0.5 / 700.0);
  EXPECT_LT(v, 1.0 / 700.0);
}

TEST(Special, SeriesFractionCrossoverIsContinuous) {
  double below = exp_e1_scaled(1.0 - 1e-9);
  double above = exp_e1_scaled(1.0 + 1e-9);
  EXPECT_NEAR(below, above, 1e-9);
}

TEST(Special, DomainErrors) {
  EXPECT_THROW(exp_integral_e1(0.0), std::domain_error);
  EXPECT_THROW(exp_integral_e1(-1.0), std::domain_error);
  EXPECT_THROW(exp_e1_scaled(0.0), std::domain_error);
  EXPECT_THROW(i2(0.0, 1.0, 1), std::domain_error);
  EXPECT_THROW(i2(1.0, -2.0, 1), std::domain_error);
  EXPECT_THROW(i2(1.0, 1.0, 0), std::domain_error);
  EXPECT_THROW(i1(-1.0, 2.0, 1), std::domain_error);
  EXPECT_THROW(i1(1.0, 0.0, 1), std::domain_error);
  EXPECT_THROW(i1(1.0, 2.0, 0), std::domain_error);
}

TEST(Special, I2KnownValues) {
  EXPECT_NEAR(i2(1.0, 1.0, 1), 0.5963473623231941, 1e-15);
  EXPECT_NEAR(i2(1.0, 1.0, 2), 0.4036526376768059, 1e-15);
  EXPECT_NEAR(i2(2.0, 3.0, 1), 0.14526762923388689, 1e-15);
}

TEST(Special, I1KnownValue) {
  EXPECT_NEAR(i1(1.0, 2.0, 1), 0.23501874543497149, 1e-14);
}

TEST(Special, I2MatchesQuadratureOnRandomGrid) {
  std::mt19937_64 gen = cogfb::trial_stream(424242, 1);
  for (int n = 0; n < 60; ++n) {
    double x = 0.01 * std::pow(1000.0, cogfb::uniform_open(gen));
    double y = 1.1 + 8.9 * cogfb::uniform_open(gen);
    int z = 1 + static_cast<int>(4.0 * cogfb::uniform_open(gen));
    if (z > 4) z = 4;
    double ref = integrate_halfline(
        [x, y, z](double t) { return std::exp(-x * t) / std::pow(t + y, z); });
    EXPECT_NEAR(i2(x, y, z), ref, 1e-8 * std::abs(ref))
        << "x=" << x << " y=" << y << " z=" << z;
  }
}

TEST(Special, I1MatchesQuadratureOnRandomGrid) {
  std::mt19937_64 gen = cogfb::trial_stream(424242, 2);
  for (int n = 0; n < 60; ++n) {
    double x = 0.01 * std::pow(1000.0, cogfb::uniform_open(gen));
    double y = 1.1 + 8.9 * cogfb::uniform_open(gen);
    int z = 1 + static_cast<int>(4.0 * cogfb::uniform_open(gen));
    if (z > 4) z = 4;
    double ref = integrate_halfline([x, y, z](double t) {
      return std::exp(-x * t) / ((t + 1.0) * std::pow(t + y, z));
    });
    EXPECT_NEAR(i1(x, y, z), ref, 1e-8 * std::abs(ref))
        << "x=" << x << " y=" << y << " z=" << z;
  }
}

TEST(Special, I1NearUnitArgumentFallsBackToQuadrature) {
  // The partial-fraction expansion is singular at y = 1; the fallback
  // must keep the value continuous through the threshold.
  for (int z : {1, 2, 3}) {
    double at_one = i1(2.0, 1.0, z);
    double nearby = i1(2.0, 1.0 + 1e-7, z);
    double outside = i1(2.0, 1.0 + 1e-5, z);
    EXPECT_NEAR(at_one, nearby, 1e-6 * at_one) << "z=" << z;
    EXPECT_NEAR(nearby, outside, 1e-4 * nearby) << "z=" << z;
  }
}

TEST(Special, I1EqualsI2CombinationAtUnitY) {
  // i1(x, 1, z) = i2(x, 1, z + 1) by definition of the two integrals.
  for (int z : {1, 2, 3}) {
    double lhs = i1(3.0, 1.0, z);
    double rhs = i2(3.0, 1.0, z + 1);
    EXPECT_NEAR(lhs, rhs, 1e-8 * rhs) << "z=" << z;
  }
}

TEST(Special, HalflineQuadratureBasics) {
  EXPECT_NEAR(integrate_halfline([](double t) { return std::exp(-t); }), 1.0,
              1e-12);
  EXPECT_NEAR(
      integrate_halfline([](double t) { return t * std::exp(-2.0 * t); }),
      0.25, 1e-12);
}

}  // namespace
