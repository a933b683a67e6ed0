#pragma once

// Complex Gamma and zeta, zeta', the Mellin transform of the coprime-pair
// series M(s) = Gamma(s) (zeta(s-1) - zeta(s)) / zeta(s), and
// Delta(s) = M(s) - (6/pi^2)/(s-2).

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "coprime/constants.hpp"
#include "coprime/double_word.hpp"
#include "coprime/error.hpp"

namespace coprime {

using Complex = std::complex<double>;

inline bool in_half_plane_right_of(Complex s, double sigma) { return s.real() > sigma; }
inline bool is_finite(Complex s) { return std::isfinite(s.real()) && std::isfinite(s.imag()); }

inline std::string to_string(Complex s) {
  return "(" + std::to_string(s.real()) + (s.imag() < 0 ? "" : "+") +
         std::to_string(s.imag()) + "i)";
}

namespace detail {

// Lanczos approximation, g = 7, n = 9 (Godfrey's coefficient set).
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczos{
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// B_{2k} / (2k)! for k = 1..12.
inline constexpr std::array<double, 12> kBernoulliOverFactorial{
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
    854513.0 / 138.0 / 1.1240007277776077e21,
    -236364091.0 / 2730.0 / 6.204484017332394e23};

inline bool is_nonpositive_integer(Complex s) {
  return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::nearbyint(s.real());
}

inline Complex gamma_right(Complex z) {
  // z in Re >= 1/2: Gamma(z) = sqrt(2 pi) t^(z-1/2) e^-t A(z-1), t = z - 1/2 + g.
  const Complex w = z - 1.0;
  Complex a = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) a += kLanczos[k] / (w + static_cast<double>(k));
  const Complex t = w + kLanczosG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::exp((w + 0.5) * std::log(t) - t) * a;
}

/// Euler-Maclaurin window check shared by zeta and zeta'.
inline void check_zeta_window(Complex s, const char* who) {
  if (s == Complex(1.0, 0.0)) throw PoleError(std::string(who) + ": pole at s=1", 1.0);
  if (!is_finite(s) || s.real() < -1.5 || std::abs(s.imag()) > 100.0)
    throw UnsupportedDomain(std::string(who) + ": s=" + to_string(s) +
                            " outside sigma >= -1.5, |t| <= 100");
}

inline int euler_maclaurin_terms(Complex s) {
  return std::max(20, static_cast<int>(std::ceil(2.0 * std::abs(s.imag()))));
}

}  // namespace detail

/// Gamma(s), relative error ~1e-14 for |s| <= 100. Reflection for Re(s) < 1/2.
inline Complex gamma_complex(Complex s) {
  if (detail::is_nonpositive_integer(s)) {
    const int n = static_cast<int>(-s.real());
    throw PoleError("gamma_complex: pole at s=-" + std::to_string(n),
                    (n % 2 == 0 ? 1.0 : -1.0) / std::tgamma(n + 1.0));
  }
  if (s.real() < 0.5) {
    const double pi = std::numbers::pi;
    return pi / (std::sin(pi * s) * detail::gamma_right(1.0 - s));
  }
  return detail::gamma_right(s);
}

/// Riemann zeta by Euler-Maclaurin summation with N = max(20, ceil(2|t|))
/// direct terms and 12 Bernoulli corrections. Window: sigma >= -1.5, |t| <= 100.
inline Complex zeta_complex(Complex s) {
  detail::check_zeta_window(s, "zeta_complex");
  const int n_terms = detail::euler_maclaurin_terms(s);
  CompensatedSum<Complex> sum;
  for (int n = 1; n < n_terms; ++n) sum += std::exp(-s * std::log(static_cast<double>(n)));

  const double big_n = n_terms;
  const double log_n = std::log(big_n);
  const Complex n_pow = std::exp(-s * log_n);  // N^-s
  sum += n_pow * big_n / (s - 1.0);
  sum += 0.5 * n_pow;

  // Bernoulli tail: B_2k/(2k)! s(s+1)...(s+2k-2) N^(-s-2k+1).
  Complex rising = s;
  Complex power = n_pow / big_n;
  for (std::size_t k = 0; k < detail::kBernoulliOverFactorial.size(); ++k) {
    sum += detail::kBernoulliOverFactorial[k] * rising * power;
    const double j = 2.0 * static_cast<double>(k) + 1.0;
    rising *= (s + j) * (s + j + 1.0);
    power /= big_n * big_n;
  }
  return sum.value();
}

/// zeta'(s) by term-wise differentiation of the Euler-Maclaurin formula.
inline Complex zeta_derivative(Complex s) {
  detail::check_zeta_window(s, "zeta_derivative");
  const int n_terms = detail::euler_maclaurin_terms(s);
  CompensatedSum<Complex> sum;
  for (int n = 2; n < n_terms; ++n) {
    const double ln = std::log(static_cast<double>(n));
    sum += -ln * std::exp(-s * ln);
  }
  const double big_n = n_terms;
  const double log_n = std::log(big_n);
  const Complex n_pow = std::exp(-s * log_n);
  const Complex inv = 1.0 / (s - 1.0);
  sum += n_pow * big_n * (-log_n * inv - inv * inv);
  sum += -0.5 * log_n * n_pow;

  Complex rising = s;
  Complex d_rising = 1.0;
  Complex power = n_pow / big_n;
  for (std::size_t k = 0; k < detail::kBernoulliOverFactorial.size(); ++k) {
    sum += detail::kBernoulliOverFactorial[k] * (d_rising - log_n * rising) * power;
    const double j = 2.0 * static_cast<double>(k) + 1.0;
    const Complex f1 = s + j;
    const Complex f2 = s + j + 1.0;
    d_rising = d_rising * f1 * f2 + rising * (f1 + f2);
    rising *= f1 * f2;
    power /= big_n * big_n;
  }
  return sum.value();
}

/// Independent zeta via the alternating (eta) series with Borwein's
/// acceleration. Used only as an oracle for the Euler-Maclaurin route.
inline Complex zeta_eta_borwein(Complex s, int n = 80) {
  if (s == Complex(1.0, 0.0)) throw PoleError("zeta_eta_borwein: pole at s=1", 1.0);
  // d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!), accumulated term-wise.
  std::vector<double> d(static_cast<std::size_t>(n) + 1);
  double term = 1.0;
  double acc = 1.0;
  d[0] = acc;
  for (int i = 1; i <= n; ++i) {
    term *= 4.0 * (n + i - 1.0) * (n - i + 1.0) / ((2.0 * i - 1.0) * (2.0 * i));
    acc += term;
    d[static_cast<std::size_t>(i)] = acc;
  }
  const double dn = d[static_cast<std::size_t>(n)];
  CompensatedSum<Complex> sum;
  for (int k = 0; k < n; ++k) {
    const double w = (d[static_cast<std::size_t>(k)] - dn) / dn;
    const Complex t = w * std::exp(-s * std::log(k + 1.0));
    sum += (k % 2 == 0) ? t : -t;
  }
  return -sum.value() / (1.0 - std::exp((1.0 - s) * std::numbers::ln2));
}

/// M(s) = Gamma(s) (zeta(s-1) - zeta(s)) / zeta(s), written as
/// Gamma(s) (zeta(s-1)/zeta(s) - 1) so that the cancelled pole of zeta at
/// s = 1 evaluates cleanly; M(1) = -1.
inline Complex mellin_rhs(Complex s) {
  if (s == Complex(2.0, 0.0))
    throw PoleError("mellin_rhs: pole at s=2", ReferenceConstants::density);
  if (s == Complex(1.0, 0.0)) return -1.0;
  return gamma_complex(s) * (zeta_complex(s - 1.0) / zeta_complex(s) - 1.0);
}

/// Delta(s) = M(s) - (6/pi^2)/(s-2), holomorphic at s = 2.
///
/// Near s = 2 both terms blow up; there Delta is recovered from Cauchy's
/// integral formula on a circle of radius 0.05 about 2, where the direct
/// difference loses only ~20x to cancellation.
inline Complex delta_direct(Complex s) {
  constexpr double kNear = 0.01;
  const Complex two(2.0, 0.0);
  const auto direct = [](Complex z) {
    return mellin_rhs(z) - ReferenceConstants::density / (z - 2.0);
  };
  if (std::abs(s - two) >= kNear) return direct(s);

  constexpr int kNodes = 64;
  constexpr double kRadius = 0.05;
  CompensatedSum<Complex> sum;
  for (int k = 0; k < kNodes; ++k) {
    const Complex w = std::polar(1.0, 2.0 * std::numbers::pi * (k + 0.5) / kNodes);
    const Complex z = two + kRadius * w;
    // (1/2 pi i) \oint D(z)/(z-s) dz with dz = i r w dtheta.
    sum += direct(z) * kRadius * w / (z - s);
  }
  return sum.value() / static_cast<double>(kNodes);
}

}  // namespace coprime
