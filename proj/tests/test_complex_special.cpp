#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "coprime/complex_special.hpp"

using namespace coprime;

namespace {

void expect_close(Complex got, Complex want, double tol, const char* what = "") {
  EXPECT_LE(std::abs(got - want), tol) << what << " got " << to_string(got) << " want "
                                       << to_string(want);
}

}  // namespace

TEST(Gamma, ExactValues) {
  expect_close(gamma_complex(1.0), 1.0, 1e-14);
  expect_close(gamma_complex(2.0), 1.0, 1e-14);
  expect_close(gamma_complex(0.5), std::sqrt(std::numbers::pi), 1e-14);
  expect_close(gamma_complex(6.0), 120.0, 1e-11);
  expect_close(gamma_complex({3.0, 4.0}), {0.0052255384713692146, -0.1725470792943002}, 1e-14);
  expect_close(gamma_complex({-2.5, 0.5}), {-0.33387520352243233, -0.20645730796360842}, 1e-14);
}

TEST(Gamma, Poles) {
  for (int n = 0; n <= 4; ++n) {
    try {
      gamma_complex(static_cast<double>(-n));
      ADD_FAILURE() << "expected PoleError at -" << n;
    } catch (const PoleError& e) {
      EXPECT_NEAR(e.residue(), (n % 2 ? -1.0 : 1.0) / std::tgamma(n + 1.0), 1e-15);
    }
  }
}

TEST(Gamma, Recurrence) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> re(-5.0, 8.0), im(-20.0, 20.0);
  for (int i = 0; i < 200; ++i) {
    const Complex s(re(rng), im(rng));
    const Complex lhs = gamma_complex(s + 1.0);
    const Complex rhs = s * gamma_complex(s);
    EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::abs(lhs)) << to_string(s);
  }
}

TEST(Gamma, CriticalLineModulus) {
  for (double t : {14.134725141734693, 21.022039638771555, 50.0}) {
    const double want = std::sqrt(std::numbers::pi / std::cosh(std::numbers::pi * t));
    EXPECT_NEAR(std::abs(gamma_complex({0.5, t})), want, 1e-12 * want) << t;
  }
}

TEST(Zeta, SpecialValues) {
  expect_close(zeta_complex(2.0), std::numbers::pi * std::numbers::pi / 6.0, 1e-12);
  expect_close(zeta_complex(0.0), -0.5, 1e-13);
  expect_close(zeta_complex(-1.0), -1.0 / 12.0, 1e-13);
  expect_close(zeta_complex(3.0), 1.2020569031595942, 1e-14);
  EXPECT_LE(std::abs(zeta_complex({0.5, 14.134725})), 1e-5);
}

TEST(Zeta, ReferencePoints) {
  expect_close(zeta_complex({-0.5, 10.0}), {2.0422623659804513, -0.04971656215725711}, 1e-12);
  expect_close(zeta_complex({0.5, 30.0}), {-0.1206422875900437, -0.5836912147637063}, 1e-12);
  expect_close(zeta_complex({3.0, 50.0}), {0.8857531745717823, 0.04849147639256098}, 1e-12);
  expect_close(zeta_complex({0.3, -7.0}), {1.0171314988950937, -0.4394440068963406}, 1e-12);
  // |zeta| ~ 250 at the window corner: relative accuracy only.
  const Complex corner(-74.13249949849947, 234.96615661319916);
  EXPECT_LE(std::abs(zeta_complex({-1.5, 90.0}) - corner), 1e-11 * std::abs(corner));
}

TEST(Zeta, ErrorsAndWindow) {
  try {
    zeta_complex(1.0);
    ADD_FAILURE();
  } catch (const PoleError& e) {
    EXPECT_EQ(e.residue(), 1.0);
  }
  EXPECT_THROW(zeta_complex(-2.0), UnsupportedDomain);
  EXPECT_THROW(zeta_complex({2.0, 101.0}), UnsupportedDomain);
  EXPECT_THROW(zeta_derivative({0.0, -150.0}), UnsupportedDomain);
  EXPECT_NO_THROW(zeta_complex({-1.5, 100.0}));
}

TEST(Zeta, AgreesWithEtaOracle) {
  for (double sigma : {-0.5, 0.25, 0.5, 2.0}) {
    for (double t = -12.0; t <= 12.0; t += 1.5) {
      const Complex s(sigma, t);
      if (std::abs(s - 1.0) < 1e-9) continue;
      const Complex a = zeta_complex(s);
      const Complex b = zeta_eta_borwein(s);
      EXPECT_LE(std::abs(a - b), 1e-11 * std::max(1.0, std::abs(a))) << to_string(s);
    }
  }
}

TEST(ZetaDerivative, Values) {
  expect_close(zeta_derivative(2.0), -0.93754825431584375, 1e-13);
  expect_close(zeta_derivative({0.5, 14.0}), {0.7482336961200863, 0.20443653378499743}, 1e-12);
}

TEST(ZetaDerivative, MatchesCentralDifferences) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> re(-1.0, 4.0), im(-40.0, 40.0);
  const double h = 1e-5;
  for (int i = 0; i < 60; ++i) {
    const Complex s(re(rng), im(rng));
    const Complex fd = (zeta_complex(s + h) - zeta_complex(s - h)) / (2.0 * h);
    EXPECT_LE(std::abs(zeta_derivative(s) - fd), 1e-7 * std::max(1.0, std::abs(fd))) << to_string(s);
  }
}

TEST(MellinRhs, Values) {
  expect_close(mellin_rhs(3.0), 0.73686555524041, 1e-12);
  expect_close(mellin_rhs(3.0), 0.7368657, 1e-6);
  expect_close(mellin_rhs(4.0), 0.66375921195689, 1e-12);
  expect_close(mellin_rhs(4.0), 0.6637583, 1e-6);
  expect_close(mellin_rhs({3.0, 1.0}), {0.406736153129, -0.144880225092}, 1e-11);
  expect_close(mellin_rhs(1.0), -1.0, 0.0);
  expect_close(mellin_rhs(1.0 + 1e-7), -1.0, 1e-6);
  try {
    mellin_rhs(2.0);
    ADD_FAILURE();
  } catch (const PoleError& e) {
    EXPECT_NEAR(e.residue(), 6.0 / (std::numbers::pi * std::numbers::pi), 1e-16);
  }
}

TEST(DeltaDirect, Values) {
  expect_close(delta_direct(3.0), 0.12893845338639, 1e-12);
  expect_close(delta_direct(3.0), 0.1289386, 1e-6);
  expect_close(delta_direct(4.0), 0.35979566102988, 1e-12);
  expect_close(delta_direct(2.5), 0.043526278416, 1e-11);
  expect_close(delta_direct(1.0), -0.39207289814597, 1e-12);
  expect_close(delta_direct(0.75), -0.6249646559998872, 1e-12);
  expect_close(delta_direct({0.75, 3.0}), {0.06266453569124467, 0.1683531218612606}, 1e-12);
}

TEST(DeltaDirect, RegularAtTwo) {
  expect_close(delta_direct(2.0), -0.045578163444171158, 1e-12);
  expect_close(delta_direct({2.0, 0.005}), {-0.04557675190133606, 0.0009829799626385766}, 1e-12);
  // Either side of the switch between the direct and Cauchy branches.
  expect_close(delta_direct(2.0099999), -0.04361780996680334, 1e-11);
  expect_close(delta_direct(2.0100001), -0.04361777087037484, 1e-11);
}

TEST(Helpers, Predicates) {
  EXPECT_TRUE(in_half_plane_right_of({2.5, 1.0}, 2.0));
  EXPECT_FALSE(in_half_plane_right_of({2.0, 1.0}, 2.0));
  EXPECT_TRUE(is_finite({1.0, 2.0}));
  EXPECT_FALSE(is_finite({NAN, 0.0}));
}
