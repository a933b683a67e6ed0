#pragma once

#include <numbers>

#include "coprime/double_word.hpp"

namespace coprime {

/// Constants of the small-beta expansion of the coprime-pair series.
///
/// density is the asymptotic density 6/pi^2 of coprime pairs. smooth_c0 and
/// smooth_c1 are the residues of Gamma(s)(zeta(s-1)-zeta(s))/zeta(s) beta^-s
/// at s = 0 and s = -1, computed from zeta(0) = -1/2, zeta(-1) = -1/12 and
/// zeta(-2) = 0; they give f(beta) = density/beta^2 - 5/6 + beta + o(beta).
/// quad_coeff_c2 is the beta^2 coefficient of the coprimality probability
/// P(beta) = density (1 + beta) + c2 beta^2 + ...
struct ReferenceConstants {
  static constexpr double density = 6.0 / (std::numbers::pi * std::numbers::pi);
  static constexpr double zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
  static constexpr double smooth_c0 = -5.0 / 6.0;
  static constexpr double smooth_c1 = 1.0;
  static constexpr double quad_coeff_c2 =
      7.0 / (2.0 * std::numbers::pi * std::numbers::pi) - 5.0 / 6.0;

  /// density as a double-word value (hi is the correctly rounded double).
  static constexpr DoubleWord density_dw{0.6079271018540267, -2.379773927663665e-17};
};

}  // namespace coprime
