#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "coprime/sieve.hpp"

using namespace coprime;

TEST(Sieve, TotientAndMoebiusSmall) {
  const SieveTables t = build_sieve(12);
  const std::uint32_t phi[] = {1, 1, 2, 2, 4, 2};
  const int mu[] = {1, -1, -1, 0, -1, 1};
  for (int n = 1; n <= 6; ++n) {
    EXPECT_EQ(t.phi(n), phi[n - 1]) << n;
    EXPECT_EQ(t.mu(n), mu[n - 1]) << n;
  }
  EXPECT_EQ(t.mu(12), 0);
}

TEST(Sieve, TotientSumExamples) {
  const SieveTables t = build_sieve(10);
  EXPECT_EQ(totient_sum(t, 1), 1u);
  EXPECT_EQ(totient_sum(t, 4), 6u);
  EXPECT_EQ(totient_sum(t, 10), 32u);
}

TEST(Sieve, Errors) {
  EXPECT_THROW(build_sieve(0), InvalidArgument);
  const SieveTables t = build_sieve(10);
  EXPECT_THROW(totient_sum(t, 11), OutOfRange);
  EXPECT_THROW(totient_sum(t, 0), OutOfRange);
  EXPECT_THROW(coprime_pairs_with_sum(1), InvalidArgument);
  EXPECT_THROW(count_coprime_pairs(0), InvalidArgument);
}

TEST(Sieve, MemoryCap) {
  const std::size_t saved = sieve_memory_cap();
  sieve_memory_cap() = 1 << 20;
  try {
    build_sieve(10'000'000);
    ADD_FAILURE() << "expected ResourceLimit";
  } catch (const ResourceLimit& e) {
    EXPECT_EQ(e.requested(), 10'000'000u);
  }
  sieve_memory_cap() = saved;
  EXPECT_THROW(build_sieve(SieveTables::kMaxLimit + 1), ResourceLimit);
}

TEST(Sieve, BruteForceExamples) {
  EXPECT_EQ(count_coprime_pairs(1), 1u);
  EXPECT_EQ(count_coprime_pairs(2), 3u);
  EXPECT_EQ(count_coprime_pairs(4), 11u);
  EXPECT_EQ(coprime_pairs_with_sum(2), 1u);
  EXPECT_EQ(coprime_pairs_with_sum(5), 4u);
  EXPECT_EQ(coprime_pairs_with_sum(8), 4u);
}

TEST(Sieve, DivisorSumIdentities) {
  const std::size_t N = 200000;
  const SieveTables t = build_sieve(N);
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<std::size_t> pick(1, N);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = pick(rng);
    std::uint64_t phi_sum = 0;
    long mu_sum = 0;
    for (std::size_t d = 1; d * d <= n; ++d) {
      if (n % d) continue;
      phi_sum += t.phi(d);
      mu_sum += t.mu(d);
      if (d * d != n) {
        phi_sum += t.phi(n / d);
        mu_sum += t.mu(n / d);
      }
    }
    EXPECT_EQ(phi_sum, n) << n;
    EXPECT_EQ(mu_sum, n == 1 ? 1 : 0) << n;
  }
}

TEST(Sieve, TotientMatchesGcdCount) {
  const SieveTables t = build_sieve(600);
  for (std::size_t s = 2; s <= 600; ++s) EXPECT_EQ(coprime_pairs_with_sum(s), t.phi(s)) << s;
}

TEST(Sieve, PairCountFromTotientSums) {
  const SieveTables t = build_sieve(300);
  for (std::uint64_t n = 1; n <= 300; ++n)
    EXPECT_EQ(count_coprime_pairs(n), 2 * totient_sum(t, n) - 1) << n;
}

TEST(Sieve, LargePrefixIsExact) {
  // Phi(10^6) = 303963552392 (standard tabulated value).
  const SieveTables t = build_sieve(1'000'000);
  EXPECT_EQ(totient_sum(t, 1'000'000), 303963552392ULL);
}
