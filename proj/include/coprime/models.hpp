#pragma once

// Four probability models on pairs of positive integers and their
// coprimality / gcd laws:
//
//   Uniform(n)    X, Y iid uniform on {1..n}
//   KWLog(n)      P[(i, j)] proportional to log(n/(i+j)) on 2 <= i+j <= n
//   Geometric(b)  X, Y iid, P[X=k] = (1 - e^-b) e^{-b(k-1)}
//   Zeta(a)       X, Y iid, P[X=k] = k^-a / zeta(a)
//
// plus samplers and a sharded Monte Carlo estimator.

#include <cmath>
#include <cstdint>
#include <atomic>
#include <numeric>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "coprime/complex_special.hpp"
#include "coprime/f_series.hpp"
#include "coprime/sieve.hpp"

namespace coprime {

struct Uniform {
  std::uint64_t n = 1;
};
struct KWLog {
  std::uint64_t n = 2;
};
struct Geometric {
  double beta = 1.0;
};
struct Zeta {
  double alpha = 2.0;
};

using Model = std::variant<Uniform, KWLog, Geometric, Zeta>;

inline std::string model_name(const Model& m) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Uniform>) return "uniform";
        else if constexpr (std::is_same_v<T, KWLog>) return "kwlog";
        else if constexpr (std::is_same_v<T, Geometric>) return "geometric";
        else return "zeta";
      },
      m);
}

inline void validate(const Model& m) {
  std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Uniform>) {
          if (v.n < 1) throw InvalidArgument("uniform model: n must be >= 1");
        } else if constexpr (std::is_same_v<T, KWLog>) {
          // At n = 2 the only pair (1, 1) has weight log(2/2) = 0.
          if (v.n < 3) throw InvalidArgument("kwlog model: n must be >= 3");
        } else if constexpr (std::is_same_v<T, Geometric>) {
          if (!(v.beta > 0.0) || !std::isfinite(v.beta))
            throw InvalidArgument("geometric model: beta must be > 0");
        } else {
          if (!(v.alpha > 1.0) || !std::isfinite(v.alpha))
            throw InvalidArgument("zeta model: alpha must be > 1");
        }
      },
      m);
}

/// Riemann zeta on the real axis x > 1.
inline double zeta_real(double x) { return zeta_complex(Complex(x, 0.0)).real(); }

struct Probability {
  double value = 0.0;
  double error_bound = 0.0;
};

namespace detail {

inline std::size_t checked_limit(std::uint64_t n) {
  if (n > SieveTables::kMaxLimit || SieveTables::bytes_for(n) > sieve_memory_cap())
    throw ResourceLimit("model requires a sieve beyond the memory cap", n);
  return static_cast<std::size_t>(n);
}

// Sum_{m=2}^{M} phi(m) ln(n / (d m)) and Sum_{s=2}^{n} (s-1) ln(n/s).
inline double kwlog_weighted_phi(const SieveTables& t, std::uint64_t n, std::uint64_t d) {
  CompensatedSum<> sum;
  const double nn = static_cast<double>(n);
  for (std::uint64_t m = 2; d * m <= n; ++m)
    sum += static_cast<double>(t.phi(m)) * std::log(nn / static_cast<double>(d * m));
  return sum.value();
}

inline double kwlog_normalizer(std::uint64_t n) {
  CompensatedSum<> sum;
  const double nn = static_cast<double>(n);
  for (std::uint64_t s = 2; s <= n; ++s)
    sum += static_cast<double>(s - 1) * std::log(nn / static_cast<double>(s));
  return sum.value();
}

}  // namespace detail

/// P[gcd(X, Y) = 1] with an absolute error bound.
///
/// Uniform: (2 Phi(n) - 1)/n^2. KWLog: pairs grouped by s = i + j, of which
/// phi(s) are coprime and s - 1 in total. Geometric: (e^b - 1)^2 f(b).
/// Zeta: 1/zeta(2a).
inline Probability probability_coprime(const Model& model, double tol = 1e-10) {
  validate(model);
  if (!(tol > 0.0) || tol > 1e-6) throw InvalidArgument("probability_coprime: need 0 < tol <= 1e-6");
  return std::visit(
      [tol](const auto& v) -> Probability {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Uniform>) {
          const auto t = shared_sieve(detail::checked_limit(v.n));
          const double n = static_cast<double>(v.n);
          const double count = static_cast<double>(2 * totient_sum(*t, v.n) - 1);
          return {count / (n * n), 2.0 * kUnitRoundoff};
        } else if constexpr (std::is_same_v<T, KWLog>) {
          const auto t = shared_sieve(detail::checked_limit(v.n));
          const double num = detail::kwlog_weighted_phi(*t, v.n, 1);
          const double den = detail::kwlog_normalizer(v.n);
          return {num / den, 8.0 * kUnitRoundoff};
        } else if constexpr (std::is_same_v<T, Geometric>) {
          const double em1 = std::expm1(v.beta);
          const double scale = em1 * em1;
          const SeriesValue f = f_phi_series(v.beta, tol / scale);
          return {scale * f.value, scale * f.error_bound + 4.0 * kUnitRoundoff};
        } else {
          return {1.0 / zeta_real(2.0 * v.alpha), 1e-12};
        }
      },
      model);
}

/// Weighted double sum over all (i, j) with 2 <= i + j <= n; O(n^2) oracle
/// for the KWLog formula.
inline double kwlog_bruteforce(std::uint64_t n) {
  if (n < 3) throw InvalidArgument("kwlog_bruteforce: n must be >= 3");
  CompensatedSum<> num, den;
  const double nn = static_cast<double>(n);
  for (std::uint64_t i = 1; i < n; ++i)
    for (std::uint64_t j = 1; i + j <= n; ++j) {
      const double w = std::log(nn / static_cast<double>(i + j));
      den += w;
      if (std::gcd(i, j) == 1) num += w;
    }
  return num.value() / den.value();
}

// ---------------------------------------------------------------------------
// gcd laws
// ---------------------------------------------------------------------------

/// P[gcd = d] for d = 1..d_max, plus an upper bound on the mass beyond d_max.
struct GcdLaw {
  Model model;
  std::vector<double> probabilities;  // probabilities[d-1] = P[gcd = d]
  double tail_bound = 0.0;

  double total() const {
    CompensatedSum<> s;
    for (double p : probabilities) s += p;
    return s.value();
  }
};

/// sum_{d>D} g(d beta): bounds the geometric gcd tail after scaling.
inline double geometric_gcd_tail(double beta, std::uint64_t d_max) {
  CompensatedSum<> sum;
  for (std::uint64_t d = d_max + 1;; ++d) {
    const double t = g_eval(static_cast<double>(d) * beta);
    sum += t;
    if (t <= 1e-18 * sum.value() || t == 0.0) {
      // Remaining terms decay at least geometrically with ratio e^{-2 beta}.
      sum += t * std::exp(-2.0 * beta) / -std::expm1(-2.0 * beta);
      break;
    }
  }
  return sum.value();
}

/// Smallest d_max whose geometric tail bound is at most `tail`.
inline std::uint64_t geometric_dmax_for_tail(double beta, double tail) {
  const double em1 = std::expm1(beta);
  std::uint64_t d = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(1.0 / beta)));
  while (em1 * em1 * geometric_gcd_tail(beta, d) > tail) d = d + d / 2 + 1;
  return d;
}

inline GcdLaw gcd_distribution(const Model& model, std::uint64_t d_max, double tol = 1e-12) {
  validate(model);
  if (d_max < 1) throw InvalidArgument("gcd_distribution: d_max must be >= 1");
  GcdLaw law{model, {}, 0.0};
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Uniform>) {
          // gcd(x, y) = d  <=>  (x/d, y/d) coprime in [1, n/d]^2.
          const auto t = shared_sieve(detail::checked_limit(v.n));
          const double n2 = static_cast<double>(v.n) * static_cast<double>(v.n);
          auto count = [&](std::uint64_t d) -> std::uint64_t {
            const std::uint64_t m = v.n / d;
            return m == 0 ? 0 : 2 * t->phi_prefix(m) - 1;
          };
          for (std::uint64_t d = 1; d <= d_max; ++d)
            law.probabilities.push_back(static_cast<double>(count(d)) / n2);
          std::uint64_t rest = 0;
          for (std::uint64_t d = d_max + 1; d <= v.n; ++d) rest += count(d);
          law.tail_bound = static_cast<double>(rest) / n2;
        } else if constexpr (std::is_same_v<T, KWLog>) {
          const auto t = shared_sieve(detail::checked_limit(v.n));
          const double den = detail::kwlog_normalizer(v.n);
          for (std::uint64_t d = 1; d <= d_max; ++d)
            law.probabilities.push_back(detail::kwlog_weighted_phi(*t, v.n, d) / den);
          CompensatedSum<> rest;
          for (std::uint64_t d = d_max + 1; 2 * d <= v.n; ++d)
            rest += detail::kwlog_weighted_phi(*t, v.n, d) / den;
          law.tail_bound = rest.value();
        } else if constexpr (std::is_same_v<T, Geometric>) {
          // P[gcd = d] = (e^b - 1)^2 f(d b).
          const double em1 = std::expm1(v.beta);
          const double scale = em1 * em1;
          for (std::uint64_t d = 1; d <= d_max; ++d)
            law.probabilities.push_back(
                scale * f_phi_series(static_cast<double>(d) * v.beta, tol / scale).value);
          law.tail_bound = scale * geometric_gcd_tail(v.beta, d_max);
        } else {
          // P[gcd = d] = d^{-2a} / zeta(2a); tail <= D^{1-2a}/((2a-1) zeta(2a)).
          const double two_a = 2.0 * v.alpha;
          const double z = zeta_real(two_a);
          for (std::uint64_t d = 1; d <= d_max; ++d)
            law.probabilities.push_back(std::pow(static_cast<double>(d), -two_a) / z);
          law.tail_bound = std::pow(static_cast<double>(d_max), 1.0 - two_a) / ((two_a - 1.0) * z);
        }
      },
      model);
  return law;
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

/// 64-bit Mersenne Twister. Stream k of a run seeded with `seed` is seeded
/// from seed_seq{lo32(seed), hi32(seed), k}; shards never share a stream.
using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Engine(seq);
}

/// Uniform deviate in (0, 1] from the top 53 bits.
inline double uniform_open_closed(Engine& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

/// Draws iid pairs from a model. KWLog is not supported.
///
/// Geometric: one deviate per draw, X = 1 + floor(-ln U / beta).
/// Zeta: Devroye's rejection sampler for the Zipf law (expected acceptance
/// rate measured at 0.71 for alpha = 1.1 and 0.82 for alpha = 2). Draws whose
/// proposal exceeds 2^63 are rejected, which biases the law by less than
/// 2^{63(1-alpha)}.
class PairSampler {
 public:
  PairSampler(Model model, std::uint64_t seed, std::uint64_t stream = 0)
      : model_(std::move(model)), rng_(make_engine(seed, stream)) {
    validate(model_);
    if (std::holds_alternative<KWLog>(model_))
      throw UnsupportedModel("sampling from the kwlog model is not supported");
  }

  std::uint64_t draw() {
    return std::visit(
        [this](const auto& v) -> std::uint64_t {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, Uniform>) {
            return 1 + std::uniform_int_distribution<std::uint64_t>(0, v.n - 1)(rng_);
          } else if constexpr (std::is_same_v<T, Geometric>) {
            return 1 + static_cast<std::uint64_t>(std::floor(-std::log(uniform_open_closed(rng_)) / v.beta));
          } else if constexpr (std::is_same_v<T, Zeta>) {
            return draw_zipf(v.alpha);
          } else {
            throw UnsupportedModel("kwlog");
          }
        },
        model_);
  }

  std::pair<std::uint64_t, std::uint64_t> draw_pair() {
    const std::uint64_t x = draw();
    return {x, draw()};
  }

 private:
  std::uint64_t draw_zipf(double a) {
    const double am1 = a - 1.0;
    const double b = std::pow(2.0, am1);
    for (;;) {
      const double u = uniform_open_closed(rng_);
      const double v = uniform_open_closed(rng_);
      const double x = std::floor(std::pow(u, -1.0 / am1));
      if (!(x < 0x1.0p63)) continue;
      const double t = std::pow(1.0 + 1.0 / x, am1);
      if (v * x * (t - 1.0) / (b - 1.0) <= t / b) return static_cast<std::uint64_t>(x);
    }
  }

  Model model_;
  Engine rng_;
};

/// First pair of the stream seeded with `seed`.
inline std::pair<std::uint64_t, std::uint64_t> sample_pair(const Model& model, std::uint64_t seed) {
  return PairSampler(model, seed).draw_pair();
}

struct MonteCarloEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t coprime = 0;
};

/// Fraction of sampled pairs that are coprime. Trials are split into a fixed
/// number of shards (independent of the thread count), so the result depends
/// only on (model, trials, seed).
inline MonteCarloEstimate monte_carlo_coprime(const Model& model, std::uint64_t trials,
                                              std::uint64_t seed, unsigned workers = 0) {
  if (trials < 1) throw InvalidArgument("monte_carlo_coprime: trials must be >= 1");
  validate(model);
  if (std::holds_alternative<KWLog>(model))
    throw UnsupportedModel("sampling from the kwlog model is not supported");

  constexpr std::uint64_t kShards = 16;
  std::vector<std::uint64_t> hits(kShards, 0);
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (std::uint64_t k = next++; k < kShards; k = next++) {
      const std::uint64_t n = trials / kShards + (k < trials % kShards ? 1 : 0);
      PairSampler sampler(model, seed, k);
      std::uint64_t h = 0;
      for (std::uint64_t i = 0; i < n; ++i) {
        const auto [x, y] = sampler.draw_pair();
        if (std::gcd(x, y) == 1) ++h;
      }
      hits[k] = h;
    }
  };
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, kShards));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }

  MonteCarloEstimate out;
  out.trials = trials;
  out.coprime = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
  out.estimate = static_cast<double>(out.coprime) / static_cast<double>(trials);
  out.standard_error = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(trials));
  return out;
}

}  // namespace coprime
