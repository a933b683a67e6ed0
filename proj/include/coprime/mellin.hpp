#pragma once

// Numerical Mellin analysis of the coprime-pair series f:
//
//   forward   int_0^inf f(b) b^{s-1} db                         (Re s > 2)
//   inverse   (1/2 pi i) int_{c-iT}^{c+iT} M(s) b^{-s} ds       (c > 2)
//   Delta     int_0^1 (f - 6/(pi^2 b^2)) b^{s-1} db + int_1^inf f b^{s-1} db
//   contour   the rectangle 3 +- iT, 1/2 + eps +- iT around the pole at 2
//
// where M(s) = Gamma(s) (zeta(s-1) - zeta(s)) / zeta(s).

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "coprime/complex_special.hpp"
#include "coprime/constants.hpp"
#include "coprime/error.hpp"
#include "coprime/f_series.hpp"
#include "coprime/quadrature.hpp"

namespace coprime {

struct MellinContourParams {
  double c = 3.0;
  double T = 40.0;
  double epsilon = 0.1;
  double quad_tol = 1e-12;

  void validate() const {
    if (!(c > 2.0)) throw UnsupportedDomain("contour abscissa c must exceed 2 (pole at s=2)");
    if (!(T > 0.0)) throw InvalidArgument("truncation height T must be positive");
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw InvalidArgument("epsilon must lie in (0, 1]");
    if (!(quad_tol > 0.0)) throw InvalidArgument("quad_tol must be positive");
  }
};

struct MellinValue {
  Complex value;
  double error_estimate = 0.0;
  bool converged = true;
  std::string trace;
};

struct InverseValue {
  double value = 0.0;
  double imag_residual = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
};

/// The four oriented contour integrals (each including the 1/(2 pi i)
/// factor), the residue at s = 2, and how far their sum is from closing.
struct ContourReport {
  Complex top_piece;
  Complex bottom_piece;
  Complex vertical_piece;
  Complex main_piece;
  double residue_at_2 = 0.0;
  double reconstruction_gap = 0.0;
};

namespace detail {

// Lower cut of the e_f integral; below it e_f is replaced by its chord
// through b and 2b, which is accurate to O(b^2 |log b|).
inline constexpr double kSmallBetaCut = 1e-3;

inline double remainder_e_f(double beta, double tol) {
  const SeriesValue f = f_phi_series(beta, tol);
  return (f.precise - main_term(beta)).value();
}

inline Complex integrand_kernel(Complex s, double beta) {
  return std::exp(-s * std::log(beta));  // beta^{-s}
}

}  // namespace detail

/// Delta(s) through its integral representation, valid for Re s > 1/2.
inline MellinValue delta_continued(Complex s, double quad_tol = 1e-10) {
  if (!(s.real() > 0.5)) throw UnsupportedDomain("delta_continued: need Re(s) > 1/2");
  if (!(quad_tol > 0.0)) throw InvalidArgument("delta_continued: quad_tol must be positive");
  // Truncation noise in f must sit well below the per-panel quadrature
  // tolerance or bisection chases it.
  const double f_tol = quad_tol * 1e-4;
  const double b = detail::kSmallBetaCut;

  // (0, b]: chord model A + B beta, integrated exactly against beta^{s-1}.
  const double e1 = detail::remainder_e_f(b, f_tol);
  const double e2 = detail::remainder_e_f(2.0 * b, f_tol);
  const double slope = (e2 - e1) / b;
  const double intercept = e1 - slope * b;
  const Complex b_pow_s = std::exp(s * std::log(b));
  const Complex small = intercept * b_pow_s / s + slope * b_pow_s * b / (s + 1.0);

  // [b, 1] in u = ln beta: int e_f(e^u) e^{u s} du.
  auto middle_f = [&](double u) -> Complex {
    return detail::remainder_e_f(std::exp(u), f_tol) * std::exp(u * s);
  };
  const auto middle = integrate_panels<Complex>(middle_f, std::log(b), 0.0, 1.0,
                                                quad_tol / (3.0 * -std::log(b)));

  // [1, 40 + |s|]: f decays like e^{-2 beta}.
  const double upper = 40.0 + std::abs(s);
  auto outer_f = [&](double beta) -> Complex {
    return f_phi_series(beta, f_tol).value * std::exp((s - 1.0) * std::log(beta));
  };
  const auto outer = integrate_panels<Complex>(outer_f, 1.0, upper, 1.0, quad_tol / (3.0 * upper));

  MellinValue out;
  out.value = small + middle.value + outer.value;
  out.error_estimate = middle.error_estimate + outer.error_estimate;
  out.converged = middle.converged && outer.converged;
  if (!out.converged) out.trace = "middle: " + middle.trace() + "; outer: " + outer.trace();
  return out;
}

/// int_0^inf f(beta) beta^{s-1} d beta for Re s > 2. The main term
/// 6/(pi^2 beta^2) is integrated exactly on (0, 1], giving (6/pi^2)/(s-2);
/// the rest is delta_continued's integral.
inline MellinValue mellin_forward(Complex s, double quad_tol = 1e-10) {
  if (!(s.real() > 2.0)) throw UnsupportedDomain("mellin_forward: need Re(s) > 2");
  MellinValue out = delta_continued(s, quad_tol);
  if (!out.converged) throw ConvergenceError("mellin_forward: quadrature did not converge: " + out.trace);
  out.value += ReferenceConstants::density / (s - 2.0);
  return out;
}

namespace detail {

inline double line_panel_width(double beta) {
  const double lb = std::abs(std::log(beta));
  return lb > 0.0 ? std::min(1.0, 2.0 * std::numbers::pi / lb / 8.0) : 1.0;
}

// (1/2 pi) int_{-T}^{T} M(sigma + it) beta^{-sigma-it} dt, which equals
// (1/2 pi i) int upward along Re s = sigma. The tolerance is relative to the
// integrand's peak near t = 0 (Gamma decay puts the peak there).
inline QuadResult<Complex> vertical_line(double beta, double sigma, double T, double quad_tol) {
  auto f = [&](double t) -> Complex {
    const Complex s(sigma, t);
    return mellin_rhs(s) * integrand_kernel(s, beta) / (2.0 * std::numbers::pi);
  };
  double scale = 0.0;
  for (double t : {0.0, 0.5, 1.0, 2.0}) scale = std::max(scale, std::abs(f(t)));
  return integrate_panels<Complex>(f, -T, T, line_panel_width(beta),
                                   quad_tol * std::max(scale, 1e-300) / (2.0 * T));
}

// (1/2 pi i) int_{x0}^{x1} M(x + iT) beta^{-x-iT} dx, relative accuracy.
inline QuadResult<Complex> horizontal_line(double beta, double x0, double x1, double height,
                                           double quad_tol) {
  auto f = [&](double x) -> Complex {
    const Complex s(x, height);
    return mellin_rhs(s) * integrand_kernel(s, beta) / Complex(0.0, 2.0 * std::numbers::pi);
  };
  const double lo = std::min(x0, x1);
  const double hi = std::max(x0, x1);
  double scale = 0.0;
  for (int k = 0; k <= 8; ++k) scale = std::max(scale, std::abs(f(lo + (hi - lo) * k / 8.0)));
  auto r = integrate_panels<Complex>(f, lo, hi, 0.5, std::max(scale, 1e-300) * quad_tol);
  if (x1 < x0) r.value = -r.value;
  return r;
}

}  // namespace detail

/// f(beta) recovered from M on the line Re s = c, truncated at |t| <= T.
inline InverseValue mellin_inverse(double beta, const MellinContourParams& params) {
  check_beta(beta, "mellin_inverse");
  params.validate();
  const auto line = detail::vertical_line(beta, params.c, params.T, params.quad_tol);
  InverseValue out;
  out.value = line.value.real();
  out.imag_residual = line.value.imag();
  out.error_estimate = line.error_estimate;
  out.converged = line.converged;
  if (!out.converged) throw ConvergenceError("mellin_inverse: " + line.trace());
  return out;
}

/// Residue-theorem bookkeeping on the rectangle with corners 3 -+ iT and
/// 1/2 + eps +- iT (counter-clockwise):
///   main + top + bottom + vertical = (6/pi^2)/beta^2.
inline ContourReport contour_decomposition(double beta, const MellinContourParams& params) {
  check_beta(beta, "contour_decomposition");
  params.validate();
  if (params.c != 3.0) throw InvalidArgument("contour_decomposition: the rectangle uses c = 3");
  if (params.epsilon > 0.5) throw InvalidArgument("contour_decomposition: epsilon must be <= 1/2");
  const double left = 0.5 + params.epsilon;
  const double tol = params.quad_tol;

  ContourReport r;
  r.main_piece = detail::vertical_line(beta, 3.0, params.T, tol).value;
  r.top_piece = detail::horizontal_line(beta, 3.0, left, params.T, tol).value;
  r.bottom_piece = detail::horizontal_line(beta, left, 3.0, -params.T, tol).value;
  r.vertical_piece = -detail::vertical_line(beta, left, params.T, tol).value;
  r.residue_at_2 = ReferenceConstants::density / (beta * beta);
  r.reconstruction_gap =
      std::abs(r.main_piece + r.top_piece + r.bottom_piece + r.vertical_piece - r.residue_at_2);
  return r;
}

/// (1/2 pi) int_{-T}^{T} |M(1/2 + eps + it)| dt. Multiplied by
/// beta^{-1/2-eps} it bounds the vertical piece for every beta at once.
inline double vertical_bound_constant(const MellinContourParams& params) {
  params.validate();
  const double sigma = 0.5 + params.epsilon;
  auto f = [&](double t) { return std::abs(mellin_rhs(Complex(sigma, t))) / (2.0 * std::numbers::pi); };
  return integrate_panels<double>(f, -params.T, params.T, 1.0, params.quad_tol / (2.0 * params.T))
      .value;
}

/// max |1/zeta(sigma + it)| sampled on |t| <= T with the given step.
/// An observed growth diagnostic, not an asserted bound.
inline double inverse_zeta_line_max(double sigma, double T, double step = 0.05) {
  double m = 0.0;
  for (double t = -T; t <= T; t += step) m = std::max(m, 1.0 / std::abs(zeta_complex(Complex(sigma, t))));
  return m;
}

}  // namespace coprime
