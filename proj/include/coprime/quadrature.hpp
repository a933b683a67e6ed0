#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature over real intervals, for real or
// complex integrands, plus a fixed-width panel driver for oscillatory lines.

#include <array>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "coprime/double_word.hpp"

namespace coprime {

struct Interval {
  double a = 0.0;
  double b = 0.0;
  double error = 0.0;
};

template <typename T>
struct QuadResult {
  T value{};
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
  std::vector<Interval> unresolved;  // subintervals that hit the depth limit

  std::string trace() const {
    std::ostringstream out;
    out << unresolved.size() << " unresolved subinterval(s)";
    for (const auto& iv : unresolved)
      out << "; [" << iv.a << ", " << iv.b << "] err=" << iv.error;
    return out.str();
  }
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kKronrodWeights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
inline constexpr std::array<double, 4> kGaussWeights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T, typename F>
void gk15(F&& f, double a, double b, T& kronrod, double& error) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const T fc = f(c);
  T k = kKronrodWeights[7] * fc;
  T g = kGaussWeights[3] * fc;
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = h * kKronrodNodes[i];
    const T pair = f(c - dx) + f(c + dx);
    k += kKronrodWeights[i] * pair;
    if (i % 2 == 1) g += kGaussWeights[i / 2] * pair;
  }
  kronrod = k * h;
  error = std::abs(kronrod - g * h);
}

template <typename T, typename F>
void adapt(F& f, double a, double b, double tol, int depth, int max_depth,
           CompensatedSum<T>& sum, double& err, QuadResult<T>& out) {
  T value{};
  double e = 0.0;
  gk15<T>(f, a, b, value, e);
  out.evaluations += 15;
  if (e <= tol || depth >= max_depth || !(std::abs(value) < INFINITY)) {
    if (e > tol) {
      out.converged = false;
      out.unresolved.push_back({a, b, e});
    }
    sum += value;
    err += e;
    return;
  }
  const double m = 0.5 * (a + b);
  adapt(f, a, m, 0.5 * tol, depth + 1, max_depth, sum, err, out);
  adapt(f, m, b, 0.5 * tol, depth + 1, max_depth, sum, err, out);
}

}  // namespace detail

/// Integrate f over [a, b] to absolute tolerance tol by recursive bisection.
template <typename T, typename F>
QuadResult<T> integrate(F&& f, double a, double b, double tol, int max_depth = 18) {
  QuadResult<T> out;
  CompensatedSum<T> sum;
  double err = 0.0;
  detail::adapt<T>(f, a, b, tol, 0, max_depth, sum, err, out);
  out.value = sum.value();
  out.error_estimate = err;
  return out;
}

/// Split [a, b] into panels of at most `width` and integrate each adaptively
/// with tolerance tol_per_unit * panel_width. Panel results are reduced in
/// left-to-right order with compensated summation.
template <typename T, typename F>
QuadResult<T> integrate_panels(F&& f, double a, double b, double width,
                               double tol_per_unit, int max_depth = 18) {
  QuadResult<T> out;
  CompensatedSum<T> sum;
  const auto panels = static_cast<std::size_t>(std::ceil((b - a) / width - 1e-12));
  const double step = (b - a) / static_cast<double>(std::max<std::size_t>(panels, 1));
  for (std::size_t i = 0; i < std::max<std::size_t>(panels, 1); ++i) {
    const double lo = a + step * static_cast<double>(i);
    const double hi = (i + 1 == panels) ? b : lo + step;
    auto part = integrate<T>(f, lo, hi, tol_per_unit * (hi - lo), max_depth);
    sum += part.value;
    out.error_estimate += part.error_estimate;
    out.evaluations += part.evaluations;
    out.converged = out.converged && part.converged;
    out.unresolved.insert(out.unresolved.end(), part.unresolved.begin(), part.unresolved.end());
  }
  out.value = sum.value();
  return out;
}

}  // namespace coprime
