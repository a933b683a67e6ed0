#pragma once

// Exact integer machinery: a linear sieve for Euler's totient and the Moebius
// function, totient prefix sums, and brute-force gcd oracles.

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "coprime/error.hpp"

namespace coprime {

/// Byte budget for sieve tables. Every table builder consults it; the CLI
/// exposes it as --sieve-mem-mb.
inline std::size_t& sieve_memory_cap() {
  static std::size_t cap = std::size_t{1} << 30;
  return cap;
}

/// phi(n), mu(n) and Phi(n) = sum_{k<=n} phi(k) for 1 <= n <= limit.
/// Immutable after construction.
class SieveTables {
 public:
  std::size_t limit() const { return limit_; }

  std::uint32_t phi(std::size_t n) const { return phi_[n]; }
  int mu(std::size_t n) const { return mu_[n]; }
  std::uint64_t phi_prefix(std::size_t n) const { return prefix_[n]; }

  /// Approximate footprint of a table of the given limit, in bytes.
  static std::size_t bytes_for(std::size_t limit) {
    return (limit + 1) * (sizeof(std::uint32_t) + sizeof(std::int8_t) +
                          sizeof(std::uint64_t)) +
           limit / 4 * sizeof(std::uint32_t);
  }

  // Phi(N) <= N(N+1)/2 must stay below 2^63, and phi(N) < 2^32.
  static constexpr std::size_t kMaxLimit = 3'000'000'000ULL;

  friend SieveTables build_sieve(std::size_t limit);

 private:
  std::size_t limit_ = 0;
  std::vector<std::uint32_t> phi_;
  std::vector<std::int8_t> mu_;
  std::vector<std::uint64_t> prefix_;
};

/// Linear (Euler) sieve: every composite is crossed out exactly once by its
/// least prime factor, so phi and mu come out in a single O(N) pass.
inline SieveTables build_sieve(std::size_t limit) {
  if (limit == 0) throw InvalidArgument("build_sieve: limit must be >= 1");
  if (limit > SieveTables::kMaxLimit)
    throw ResourceLimit("build_sieve: totient prefix sums would overflow 64 bits", limit);
  if (SieveTables::bytes_for(limit) > sieve_memory_cap())
    throw ResourceLimit("build_sieve: tables exceed the sieve memory cap", limit);

  SieveTables t;
  t.limit_ = limit;
  t.phi_.assign(limit + 1, 0);
  t.mu_.assign(limit + 1, 0);
  t.prefix_.assign(limit + 1, 0);
  std::vector<std::uint32_t> primes;

  t.phi_[1] = 1;
  t.mu_[1] = 1;
  for (std::size_t i = 2; i <= limit; ++i) {
    if (t.phi_[i] == 0) {  // not reached by any smaller factor: prime
      t.phi_[i] = static_cast<std::uint32_t>(i - 1);
      t.mu_[i] = -1;
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes) {
      const std::size_t ip = i * p;
      if (ip > limit) break;
      if (i % p == 0) {
        t.phi_[ip] = t.phi_[i] * p;
        t.mu_[ip] = 0;
        break;
      }
      t.phi_[ip] = t.phi_[i] * (p - 1);
      t.mu_[ip] = static_cast<std::int8_t>(-t.mu_[i]);
    }
  }
  for (std::size_t i = 1; i <= limit; ++i) t.prefix_[i] = t.prefix_[i - 1] + t.phi_[i];
  return t;
}

/// Phi(n) = sum_{k<=n} phi(k), exact.
inline std::uint64_t totient_sum(const SieveTables& tables, std::size_t n) {
  if (n == 0 || n > tables.limit())
    throw OutOfRange("totient_sum: n=" + std::to_string(n) + " outside [1, " +
                     std::to_string(tables.limit()) + "]");
  return tables.phi_prefix(n);
}

// ---------------------------------------------------------------------------
// Brute-force oracles. O(n^2) / O(s) gcd loops; they share no code with the
// sieve and serve as ground truth for it and for the probability models.
// ---------------------------------------------------------------------------

/// #{(x, y) in [1, n]^2 : gcd(x, y) = 1}.
inline std::uint64_t count_coprime_pairs(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("count_coprime_pairs: n must be >= 1");
  std::uint64_t below_diagonal = 0;
  for (std::uint64_t x = 2; x <= n; ++x)
    for (std::uint64_t y = 1; y < x; ++y)
      if (std::gcd(x, y) == 1) ++below_diagonal;
  // (1,1) is the only coprime pair on the diagonal.
  return 2 * below_diagonal + 1;
}

/// #{(x, y) in N^2 : x + y = s, gcd(x, y) = 1}; equals phi(s) for s >= 2.
inline std::uint64_t coprime_pairs_with_sum(std::uint64_t s) {
  if (s < 2) throw InvalidArgument("coprime_pairs_with_sum: s must be >= 2");
  std::uint64_t count = 0;
  for (std::uint64_t x = 1; x < s; ++x)
    if (std::gcd(x, s - x) == 1) ++count;
  return count;
}

}  // namespace coprime
