#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "coprime/quadrature.hpp"

using namespace coprime;
using C = std::complex<double>;

TEST(Quadrature, SmoothReal) {
  const auto r = integrate<double>([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-13);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 2.0, 1e-13);
  EXPECT_GT(r.evaluations, 0u);
  const auto e = integrate<double>([](double x) { return std::exp(-x * x); }, -8.0, 8.0, 1e-14);
  EXPECT_NEAR(e.value, std::sqrt(std::numbers::pi), 1e-13);
}

TEST(Quadrature, Complex) {
  // int_0^1 e^{i k x} dx = (e^{ik} - 1)/(ik)
  const double k = 25.0;
  const auto r = integrate_panels<C>([&](double x) { return std::exp(C(0.0, k * x)); }, 0.0, 1.0, 0.1,
                                     1e-13);
  const C want = (std::exp(C(0.0, k)) - 1.0) / C(0.0, k);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(std::abs(r.value - want), 1e-13);
}

TEST(Quadrature, EndpointSingularity) {
  auto f = [](double x) { return 1.0 / std::sqrt(x); };
  // Bisection halves the local tolerance while the leftmost panel's error
  // only drops by sqrt(2), so the depth limit is hit; that must be reported.
  const auto tight = integrate<double>(f, 0.0, 1.0, 1e-10);
  EXPECT_FALSE(tight.converged);
  ASSERT_FALSE(tight.unresolved.empty());
  EXPECT_EQ(tight.unresolved.front().a, 0.0);
  EXPECT_NEAR(tight.value, 2.0, 1e-3);
}

TEST(Quadrature, ReversedInterval) {
  const auto r = integrate<double>([](double x) { return x * x; }, 1.0, 0.0, 1e-14);
  EXPECT_NEAR(r.value, -1.0 / 3.0, 1e-14);
}

TEST(Quadrature, ReportsUnresolvedSubintervals) {
  const double jump = 1.0 / std::numbers::sqrt2;
  auto step = [&](double x) { return x < jump ? 0.0 : 1.0; };
  const auto r = integrate<double>(step, 0.0, 1.0, 1e-300, 4);
  EXPECT_FALSE(r.converged);
  ASSERT_FALSE(r.unresolved.empty());
  bool covers = false;
  for (const auto& iv : r.unresolved) covers |= iv.a <= jump && jump <= iv.b;
  EXPECT_TRUE(covers);
  EXPECT_NE(r.trace().find("unresolved"), std::string::npos);
  EXPECT_NEAR(r.value, 1.0 - jump, 1e-2);
}
