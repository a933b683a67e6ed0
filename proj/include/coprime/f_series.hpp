#pragma once

// The coprime-pair series
//
//     f(beta) = sum_{gcd(x,y)=1} exp(-beta (x + y))
//
// evaluated two independent ways: grouped by s = x + y (coefficient phi(s)),
// and by Moebius inversion of the all-pairs sum g(beta) = 1/(e^beta - 1)^2.
// Both carry rigorous truncation bounds. Also the beta-grid scan that
// extracts the remainders f - (6/pi^2)/beta^2 and P - (6/pi^2)(1 + beta), and
// log-log exponent fits on the scan.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "coprime/constants.hpp"
#include "coprime/double_word.hpp"
#include "coprime/error.hpp"
#include "coprime/sieve.hpp"

namespace coprime {

inline constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;

/// Process-wide read-only sieve, grown (by rebuilding) on demand.
inline std::shared_ptr<const SieveTables> shared_sieve(std::size_t min_limit) {
  static std::mutex mutex;
  static std::shared_ptr<const SieveTables> tables;
  std::lock_guard lock(mutex);
  if (tables && tables->limit() >= min_limit) return tables;
  std::size_t limit = std::max<std::size_t>(min_limit, 1024);
  if (tables) {
    const std::size_t doubled = 2 * tables->limit();
    if (doubled > limit && SieveTables::bytes_for(doubled) <= sieve_memory_cap()) limit = doubled;
  }
  tables = std::make_shared<const SieveTables>(build_sieve(limit));
  return tables;
}

/// A series value with an absolute error bound.
///
/// `precise` is the double-word sum; `precise_error_bound` bounds its error.
/// `value` is `precise` rounded to double and `error_bound` bounds the error
/// of that rounded value (it includes the final half-ulp).
struct SeriesValue {
  double value = 0.0;
  double error_bound = 0.0;
  DoubleWord precise;
  double precise_error_bound = 0.0;
  std::size_t cutoff = 0;
};

inline void check_beta(double beta, const char* who) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw InvalidArgument(std::string(who) + ": beta must be a positive finite real");
}

/// g(beta) = sum over all pairs of exp(-beta (x + y)) = 1/(e^beta - 1)^2.
inline double g_eval(double beta) {
  check_beta(beta, "g_eval");
  const double e = std::expm1(beta);
  return 1.0 / (e * e);
}

/// sum_{s>S} s q^s with q = exp(-beta): q^(S+1) ((S+1) - S q) / (1 - q)^2.
/// Bounds the phi-series tail since phi(s) <= s.
inline double phi_series_tail_bound(double beta, std::size_t cutoff) {
  const double s = static_cast<double>(cutoff);
  const double one_minus_q = -std::expm1(-beta);
  const double q = std::exp(-beta);
  return std::exp(-beta * (s + 1.0)) * ((s + 1.0) - s * q) / (one_minus_q * one_minus_q);
}

/// Cutoff S = ceil((ln(1/tol) + 2 ln(1/beta) + 20)/beta), raised until the
/// tail bound is below tol/2.
inline std::size_t phi_series_cutoff(double beta, double tol_abs) {
  const double raw = (std::log(1.0 / tol_abs) + 2.0 * std::log(1.0 / beta) + 20.0) / beta;
  double s = std::max(2.0, std::ceil(raw));
  while (phi_series_tail_bound(beta, static_cast<std::size_t>(s)) >= 0.5 * tol_abs)
    s = std::ceil(1.25 * s + 1.0);
  if (s > static_cast<double>(SieveTables::kMaxLimit))
    throw ResourceLimit("f_phi_series: cutoff exceeds the sieve range", SieveTables::kMaxLimit);
  return static_cast<std::size_t>(s);
}

/// f(beta) = sum_{s>=2} phi(s) exp(-beta s).
///
/// exp(-beta s) is generated by a double-word running product of
/// q = exp(-beta), so every term is accurate to a few units of 2^-106 and the
/// double-word accumulator keeps the sum at that level.
inline SeriesValue f_phi_series(double beta, double tol_abs) {
  check_beta(beta, "f_phi_series");
  if (!(tol_abs > 0.0)) throw InvalidArgument("f_phi_series: tol_abs must be positive");
  const std::size_t cutoff = phi_series_cutoff(beta, tol_abs);
  if (SieveTables::bytes_for(cutoff) > sieve_memory_cap())
    throw ResourceLimit("f_phi_series: sieve for the required cutoff exceeds the memory cap",
                        cutoff);
  const auto tables = shared_sieve(cutoff);

  const DoubleWord q = exp_neg(beta);
  DoubleWord power = q * q;
  DoubleWord sum;
  std::size_t last = 1;
  for (std::size_t s = 2; s <= cutoff; ++s) {
    if (power.hi == 0.0) break;
    sum += DoubleWord(static_cast<double>(tables->phi(s))) * power;
    power *= q;
    last = s;
  }

  const double u2 = kUnitRoundoff * kUnitRoundoff;
  SeriesValue out;
  out.precise = sum;
  out.cutoff = last;
  out.precise_error_bound = phi_series_tail_bound(beta, cutoff) +
                            std::abs(sum.hi) * u2 * (16.0 * static_cast<double>(last) + 64.0);
  out.value = sum.hi;
  out.error_bound = out.precise_error_bound + std::abs(sum.lo);
  return out;
}

/// Moebius cutoff: every dropped term has d beta > 60.
inline std::size_t moebius_cutoff(double beta) {
  const double d = std::ceil(60.0 / beta);
  if (d > static_cast<double>(SieveTables::kMaxLimit))
    throw ResourceLimit("f_moebius_series: cutoff exceeds the sieve range",
                        SieveTables::kMaxLimit);
  return static_cast<std::size_t>(d);
}

/// sum_{d>D} g(d beta) <= e^{-2 (D+1) beta} / ((1 - e^{-(D+1) beta})^2 (1 - e^{-2 beta})).
inline double moebius_tail_bound(double beta, std::size_t cutoff) {
  const double x = beta * (static_cast<double>(cutoff) + 1.0);
  const double lead = -std::expm1(-x);
  return std::exp(-2.0 * x) / (lead * lead * -std::expm1(-2.0 * beta));
}

/// f(beta) = sum_{d>=1} mu(d) g(d beta), from Moebius inversion of
/// sum_{n>=1} f(n beta) = g(beta).
inline SeriesValue f_moebius_series(double beta, double tol_abs) {
  check_beta(beta, "f_moebius_series");
  if (!(tol_abs > 0.0)) throw InvalidArgument("f_moebius_series: tol_abs must be positive");
  std::size_t cutoff = moebius_cutoff(beta);
  while (moebius_tail_bound(beta, cutoff) >= 0.5 * tol_abs) cutoff += cutoff / 4 + 1;
  if (SieveTables::bytes_for(cutoff) > sieve_memory_cap())
    throw ResourceLimit("f_moebius_series: sieve for the required cutoff exceeds the memory cap",
                        cutoff);
  const auto tables = shared_sieve(cutoff);

  DoubleWord sum;
  double abs_sum = 0.0;
  for (std::size_t d = 1; d <= cutoff; ++d) {
    const int mu = tables->mu(d);
    if (mu == 0) continue;
    // x = d beta exactly as hi + lo; first-order correction for lo:
    // g(x + lo) = g(x) (1 - 2 lo e^x / (e^x - 1)).
    const DoubleWord x = two_prod(static_cast<double>(d), beta);
    const double em1 = std::expm1(x.hi);
    double term = 1.0 / (em1 * em1);
    if (term == 0.0) break;
    term *= 1.0 - 2.0 * x.lo * (1.0 + 1.0 / em1);
    sum += DoubleWord(mu > 0 ? term : -term);
    abs_sum += term;
  }

  SeriesValue out;
  out.precise = sum;
  out.cutoff = cutoff;
  out.precise_error_bound = moebius_tail_bound(beta, cutoff) + 6.0 * kUnitRoundoff * abs_sum;
  out.value = sum.hi;
  out.error_bound = out.precise_error_bound + std::abs(sum.lo);
  return out;
}

// ---------------------------------------------------------------------------
// Scans
// ---------------------------------------------------------------------------

/// One beta grid point.
struct ScanRecord {
  double beta = 0.0;
  double f_value = 0.0;
  double f_error_bound = 0.0;
  double p_coprime = 0.0;
  double e_f = 0.0;              // f - density/beta^2
  double e_p = 0.0;              // P - density (1 + beta)
  double scaled_e_f = 0.0;       // sqrt(beta) e_f
  double smooth_residual = 0.0;  // e_f + 5/6 - beta
  std::optional<std::string> error;

  bool ok() const { return !error.has_value(); }
};

/// (expm1(beta)/beta)^2 - 1 - beta = sum_{k>=2} (2^{k+2} - 2)/(k+2)! beta^k.
inline double squared_expm1_excess(double beta) {
  if (beta > 1.0) {
    const double q = std::expm1(beta) / beta;
    return q * q - 1.0 - beta;
  }
  double sum = 0.0;
  double pow2 = 16.0;       // 2^{k+2}
  double fact = 24.0;       // (k+2)!
  double bk = beta * beta;  // beta^k
  for (int k = 2; k < 40; ++k) {
    const double term = (pow2 - 2.0) / fact * bk;
    sum += term;
    if (term < 1e-18 * sum) break;
    pow2 *= 2.0;
    fact *= static_cast<double>(k + 3);
    bk *= beta;
  }
  return sum;
}

/// Main term density/beta^2 in double-word arithmetic.
inline DoubleWord main_term(double beta) {
  return ReferenceConstants::density_dw / two_prod(beta, beta);
}

inline ScanRecord scan_point(double beta, double tol_abs) {
  ScanRecord r;
  r.beta = beta;
  const SeriesValue f = f_phi_series(beta, tol_abs);
  r.f_value = f.value;
  r.f_error_bound = f.precise_error_bound;

  const DoubleWord e_f = f.precise - main_term(beta);
  r.e_f = e_f.value();
  const double em1 = std::expm1(beta);
  r.p_coprime = em1 * em1 * f.value;
  // P - density(1+beta) = density * ((expm1/beta)^2 - 1 - beta) + expm1^2 e_f
  r.e_p = ReferenceConstants::density * squared_expm1_excess(beta) + em1 * em1 * r.e_f;
  r.scaled_e_f = std::sqrt(beta) * r.e_f;
  const DoubleWord five_sixths(5.0 / 6.0, std::fma(-6.0, 5.0 / 6.0, 5.0) / 6.0);
  r.smooth_residual = (e_f + five_sixths - DoubleWord(beta)).value();
  return r;
}

inline void check_grid(const std::vector<double>& grid) {
  for (double b : grid)
    if (!(b >= 1e-6 && b <= 50.0))
      throw InvalidArgument("scan: grid entries must lie in [1e-6, 50]");
  const bool ascending = std::is_sorted(grid.begin(), grid.end());
  const bool descending = std::is_sorted(grid.rbegin(), grid.rend());
  if (!ascending && !descending) throw InvalidArgument("scan: grid must be sorted");
}

/// Evaluate one ScanRecord per grid point. Points that fail (for example on
/// the sieve memory cap) are kept with `error` set and NaN fields.
inline std::vector<ScanRecord> scan(const std::vector<double>& grid, double tol_abs,
                                    unsigned workers = 0) {
  check_grid(grid);
  std::vector<ScanRecord> out(grid.size());
  if (grid.empty()) return out;

  // Size the shared table once for the smallest beta.
  const double smallest = *std::min_element(grid.begin(), grid.end());
  try {
    shared_sieve(phi_series_cutoff(smallest, tol_abs));
  } catch (const ResourceLimit&) {
    // reported per point below
  }

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        out[i] = scan_point(grid[i], tol_abs);
      } catch (const Error& e) {
        ScanRecord r;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        r.beta = grid[i];
        r.f_value = r.f_error_bound = r.p_coprime = r.e_f = r.e_p = r.scaled_e_f =
            r.smooth_residual = nan;
        r.error = e.what();
        out[i] = r;
      }
    }
  };
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, grid.size()));
  std::vector<std::jthread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  return out;
}

/// n points from lo to hi inclusive, log- or linearly spaced.
inline std::vector<double> make_grid(double lo, double hi, std::size_t n, bool log_spaced) {
  if (n == 0) throw InvalidArgument("make_grid: need at least one point");
  if (!(lo > 0.0) || !(hi >= lo)) throw InvalidArgument("make_grid: need 0 < lo <= hi");
  std::vector<double> g(n);
  if (n == 1) {
    g[0] = lo;
    return g;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    g[i] = log_spaced ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))
                      : lo + t * (hi - lo);
  }
  g.front() = lo;
  g.back() = hi;
  return g;
}

// ---------------------------------------------------------------------------
// Fits
// ---------------------------------------------------------------------------

enum class ScanField { e_f, e_p, smooth_residual };

inline double field_value(const ScanRecord& r, ScanField f) {
  switch (f) {
    case ScanField::e_f: return r.e_f;
    case ScanField::e_p: return r.e_p;
    case ScanField::smooth_residual: return r.smooth_residual;
  }
  return 0.0;
}

inline std::optional<ScanField> parse_scan_field(const std::string& name) {
  if (name == "e_f") return ScanField::e_f;
  if (name == "e_p") return ScanField::e_p;
  if (name == "smooth_residual") return ScanField::smooth_residual;
  return std::nullopt;
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

inline LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

/// Least-squares slope of log|field| against log beta.
inline LinearFit fit_exponent(const std::vector<ScanRecord>& records, ScanField field) {
  if (records.size() < 8) throw InvalidArgument("fit_exponent: need at least 8 records");
  double lo = INFINITY, hi = 0.0;
  int sign = 0;
  std::vector<double> x, y;
  for (const auto& r : records) {
    const double v = field_value(r, field);
    if (!r.ok() || !std::isfinite(v) || v == 0.0)
      throw InvalidArgument("fit_exponent: field must be finite and nonzero at every record");
    const int s = v > 0 ? 1 : -1;
    if (sign != 0 && s != sign)
      throw OscillationDetected("fit_exponent: field changes sign near beta=" +
                                std::to_string(r.beta));
    sign = s;
    lo = std::min(lo, r.beta);
    hi = std::max(hi, r.beta);
    x.push_back(std::log(r.beta));
    y.push_back(std::log(std::abs(v)));
  }
  if (hi < 100.0 * lo * (1.0 - 1e-9))
    throw InvalidArgument("fit_exponent: records must span at least two decades of beta");
  return least_squares(x, y);
}

/// Least-squares c in e_p ~ c beta^2 with relative weighting, i.e. the mean of
/// e_p / beta^2 over the records.
inline double fit_quadratic_coefficient(const std::vector<ScanRecord>& records) {
  if (records.empty()) throw InvalidArgument("fit_quadratic_coefficient: no records");
  double sum = 0.0;
  for (const auto& r : records) {
    if (!r.ok()) throw InvalidArgument("fit_quadratic_coefficient: failed record in input");
    sum += r.e_p / (r.beta * r.beta);
  }
  return sum / static_cast<double>(records.size());
}

}  // namespace coprime
