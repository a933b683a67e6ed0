#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "coprime/constants.hpp"
#include "coprime/models.hpp"

using namespace coprime;

TEST(Probability, Examples) {
  EXPECT_EQ(probability_coprime(Uniform{4}).value, 0.6875);
  EXPECT_NEAR(probability_coprime(KWLog{5}).value, 0.91441823525331, 1e-12);
  EXPECT_NEAR(probability_coprime(Zeta{2.0}).value, 0.92393840292159, 1e-12);
  EXPECT_NEAR(probability_coprime(Zeta{2.0}).value, 90.0 / std::pow(M_PI, 4), 1e-13);
  EXPECT_NEAR(probability_coprime(Geometric{1.0}).value, 0.91944491673864, 1e-12);
}

TEST(Probability, ErrorBoundsAreHonest) {
  const Probability p = probability_coprime(Geometric{0.01}, 1e-10);
  EXPECT_LE(p.error_bound, 1e-10);
  const double em1 = std::expm1(0.01);
  EXPECT_NEAR(p.value, em1 * em1 * f_phi_series(0.01, 1e-13).value, 1e-10);
}

TEST(Probability, InvalidParameters) {
  EXPECT_THROW(probability_coprime(Uniform{0}), InvalidArgument);
  EXPECT_THROW(probability_coprime(KWLog{1}), InvalidArgument);
  EXPECT_THROW(probability_coprime(KWLog{2}), InvalidArgument);
  EXPECT_THROW(kwlog_bruteforce(2), InvalidArgument);
  EXPECT_THROW(probability_coprime(Geometric{0.0}), InvalidArgument);
  EXPECT_THROW(probability_coprime(Geometric{-2.0}), InvalidArgument);
  EXPECT_THROW(probability_coprime(Zeta{1.0}), InvalidArgument);
  EXPECT_THROW(probability_coprime(Uniform{4}, 1e-3), InvalidArgument);
  EXPECT_THROW(probability_coprime(Uniform{4}, 0.0), InvalidArgument);
}

TEST(Probability, ResourceLimit) {
  const std::size_t saved = sieve_memory_cap();
  sieve_memory_cap() = 1 << 20;
  EXPECT_THROW(probability_coprime(Uniform{100'000'000}), ResourceLimit);
  sieve_memory_cap() = saved;
}

TEST(Probability, UniformMatchesBruteForce) {
  for (std::uint64_t n = 1; n <= 120; ++n) {
    const double brute = static_cast<double>(count_coprime_pairs(n)) / static_cast<double>(n * n);
    EXPECT_EQ(probability_coprime(Uniform{n}).value, brute) << n;
  }
}

TEST(Probability, KWLogMatchesBruteForce) {
  for (std::uint64_t n = 3; n <= 80; ++n) {
    const double brute = kwlog_bruteforce(n);
    EXPECT_NEAR(probability_coprime(KWLog{n}).value, brute, 1e-12 * brute) << n;
  }
}

TEST(Probability, LimitsApproachDensity) {
  const double d = ReferenceConstants::density;
  EXPECT_NEAR(probability_coprime(Uniform{100000}).value, d, 2e-4);
  EXPECT_NEAR(probability_coprime(Geometric{1e-4}).value, d, 1e-4);
  EXPECT_NEAR(probability_coprime(Zeta{40.0}).value, 1.0, 1e-20);
  double prev = 1.0;
  for (double a : {4.0, 2.0, 1.5, 1.1, 1.01}) {
    const double p = probability_coprime(Zeta{a}).value;
    EXPECT_LT(p, prev) << a;
    EXPECT_GT(p, d) << a;
    prev = p;
  }
  EXPECT_NEAR(prev, d, 0.02);
}

TEST(GcdLaw, Examples) {
  const GcdLaw z = gcd_distribution(Zeta{2.0}, 10);
  EXPECT_NEAR(z.probabilities[1], 0.0577461501826, 1e-12);
  EXPECT_NEAR(z.probabilities[0], probability_coprime(Zeta{2.0}).value, 1e-15);

  const GcdLaw u = gcd_distribution(Uniform{2}, 2);
  EXPECT_EQ(u.probabilities[0], 0.75);
  EXPECT_EQ(u.probabilities[1], 0.25);
  EXPECT_EQ(u.tail_bound, 0.0);
}

TEST(GcdLaw, GeometricTotalMass) {
  for (double beta : {0.5, 2.0}) {
    const GcdLaw law = gcd_distribution(Geometric{beta}, geometric_dmax_for_tail(beta, 1e-14));
    EXPECT_NEAR(law.total() + law.tail_bound, 1.0, 1e-12) << beta;
    EXPECT_LE(law.tail_bound, 1e-14);
  }
}

TEST(GcdLaw, UniformAndKWLogMass) {
  const GcdLaw u = gcd_distribution(Uniform{50}, 50);
  EXPECT_NEAR(u.total(), 1.0, 1e-15);
  const GcdLaw k = gcd_distribution(KWLog{50}, 3);
  EXPECT_NEAR(k.total() + k.tail_bound, 1.0, 1e-13);
}

TEST(Sampling, Deterministic) {
  PairSampler a(Geometric{0.1}, 99), b(Geometric{0.1}, 99), c(Geometric{0.1}, 99, 1);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const auto pa = a.draw_pair();
    EXPECT_EQ(pa, b.draw_pair());
    differs |= pa != c.draw_pair();
  }
  EXPECT_TRUE(differs);
  EXPECT_EQ(sample_pair(Zeta{2.0}, 5), sample_pair(Zeta{2.0}, 5));
}

TEST(Sampling, UnsupportedModel) {
  EXPECT_THROW(PairSampler(KWLog{10}, 1), UnsupportedModel);
  EXPECT_THROW(monte_carlo_coprime(KWLog{10}, 10, 1), UnsupportedModel);
}

TEST(Sampling, UniformOpenClosed) {
  Engine rng = make_engine(3);
  for (int i = 0; i < 100000; ++i) {
    const double u = uniform_open_closed(rng);
    ASSERT_GT(u, 0.0);
    ASSERT_LE(u, 1.0);
  }
}

TEST(Sampling, MarginalLaws) {
  const int n = 200000;
  PairSampler g(Geometric{0.2}, 11);
  double mean = 0.0;
  for (int i = 0; i < n; ++i) mean += static_cast<double>(g.draw());
  mean /= n;
  const double q = std::exp(-0.2);
  const double expected = 1.0 / (1.0 - q);
  const double sd = std::sqrt(q) / (1.0 - q);
  EXPECT_NEAR(mean, expected, 5.0 * sd / std::sqrt(n));

  PairSampler z(Zeta{2.0}, 12);
  int ones = 0;
  for (int i = 0; i < n; ++i) ones += z.draw() == 1;
  const double p1 = 6.0 / (M_PI * M_PI);
  EXPECT_NEAR(static_cast<double>(ones) / n, p1, 5.0 * std::sqrt(p1 * (1 - p1) / n));

  PairSampler u(Uniform{6}, 13);
  std::array<int, 7> counts{};
  for (int i = 0; i < 60000; ++i) ++counts.at(u.draw());
  EXPECT_EQ(counts[0], 0);
  for (int k = 1; k <= 6; ++k) EXPECT_NEAR(counts[k], 10000, 500);
}

TEST(MonteCarlo, AgreesWithAnalytic) {
  const MonteCarloEstimate g = monte_carlo_coprime(Geometric{0.01}, 200000, 42);
  EXPECT_NEAR(g.estimate, probability_coprime(Geometric{0.01}).value, 4.0 * g.standard_error);
  const MonteCarloEstimate u = monte_carlo_coprime(Uniform{1000}, 200000, 43);
  EXPECT_NEAR(u.estimate, probability_coprime(Uniform{1000}).value, 4.0 * u.standard_error);
}

TEST(MonteCarlo, SingleTrialAndWorkerIndependence) {
  const MonteCarloEstimate one = monte_carlo_coprime(Zeta{2.0}, 1, 8);
  EXPECT_TRUE(one.estimate == 0.0 || one.estimate == 1.0);
  const auto a = monte_carlo_coprime(Zeta{2.0}, 50000, 8, 1);
  const auto b = monte_carlo_coprime(Zeta{2.0}, 50000, 8, 3);
  EXPECT_EQ(a.coprime, b.coprime);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_THROW(monte_carlo_coprime(Zeta{2.0}, 0, 8), InvalidArgument);
}
