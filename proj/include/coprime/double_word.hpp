#pragma once

// Double-word ("double-double") arithmetic and compensated accumulators.
//
// A DoubleWord represents hi + lo with |lo| <= ulp(hi)/2. Only the handful of
// operations needed by the series evaluators are provided; all of them are
// the classical error-free transformations (Knuth TwoSum, FMA-based TwoProd)
// followed by a renormalisation.

#include <cmath>
#include <complex>
#include <type_traits>

namespace coprime {

struct DoubleWord {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DoubleWord() = default;
  constexpr DoubleWord(double h) : hi(h) {}  // NOLINT(google-explicit-constructor)
  constexpr DoubleWord(double h, double l) : hi(h), lo(l) {}

  double value() const { return hi + lo; }
};

inline DoubleWord two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DoubleWord fast_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DoubleWord two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DoubleWord operator+(DoubleWord a, DoubleWord b) {
  DoubleWord s = two_sum(a.hi, b.hi);
  DoubleWord t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = fast_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return fast_two_sum(s.hi, s.lo);
}

inline DoubleWord operator-(DoubleWord a) { return {-a.hi, -a.lo}; }
inline DoubleWord operator-(DoubleWord a, DoubleWord b) { return a + (-b); }

inline DoubleWord operator*(DoubleWord a, DoubleWord b) {
  DoubleWord p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return fast_two_sum(p.hi, p.lo);
}

inline DoubleWord operator/(DoubleWord a, DoubleWord b) {
  const double q1 = a.hi / b.hi;
  DoubleWord r = a - b * DoubleWord(q1);
  const double q2 = r.hi / b.hi;
  r = r - b * DoubleWord(q2);
  const double q3 = r.hi / b.hi;
  return DoubleWord(q1) + DoubleWord(q2) + DoubleWord(q3);
}

inline DoubleWord& operator+=(DoubleWord& a, DoubleWord b) { return a = a + b; }
inline DoubleWord& operator*=(DoubleWord& a, DoubleWord b) { return a = a * b; }

inline DoubleWord ldexp(DoubleWord a, int e) {
  return {std::ldexp(a.hi, e), std::ldexp(a.lo, e)};
}

/// ln 2 split into a double-word constant.
inline constexpr DoubleWord kLn2{0.6931471805599453, 2.3190468138462996e-17};

/// exp(-x) to double-word accuracy for 0 <= x <= ~700.
///
/// Argument reduction x = k ln2 + r, |r| <= ln2/2, then r is scaled by 2^-10,
/// a Taylor series is summed in double-word and the result squared back.
inline DoubleWord exp_neg(double x) {
  const double k = std::nearbyint(x / kLn2.hi);
  const DoubleWord r = DoubleWord(x) - DoubleWord(k) * kLn2;
  const DoubleWord t = ldexp(-r, -10);
  DoubleWord term(1.0);
  DoubleWord sum(1.0);
  for (int n = 1; n <= 14; ++n) {
    term = term * t / DoubleWord(static_cast<double>(n));
    sum += term;
  }
  for (int i = 0; i < 10; ++i) sum = sum * sum;
  return ldexp(sum, -static_cast<int>(k));
}

/// Neumaier's improved Kahan summation.
template <typename T = double>
class CompensatedSum {
 public:
  void add(T x) {
    const T t = sum_ + x;
    if constexpr (std::is_same_v<T, double>) {
      if (std::abs(sum_) >= std::abs(x))
        comp_ += (sum_ - t) + x;
      else
        comp_ += (x - t) + sum_;
    } else {
      comp_ += component_error(sum_, x, t);
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(T x) {
    add(x);
    return *this;
  }

  T value() const { return sum_ + comp_; }

 private:
  static T component_error(T a, T b, T t) {
    auto err = [](double s, double y, double u) {
      return std::abs(s) >= std::abs(y) ? (s - u) + y : (y - u) + s;
    };
    return T(err(a.real(), b.real(), t.real()), err(a.imag(), b.imag(), t.imag()));
  }

  T sum_{};
  T comp_{};
};

}  // namespace coprime
