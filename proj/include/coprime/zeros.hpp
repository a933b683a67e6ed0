#pragma once

// Critical-line zeros of zeta and the oscillatory part of f they generate.
//
// At a simple zero rho of zeta, Gamma(s) (zeta(s-1) - zeta(s))/zeta(s) beta^-s
// has residue Gamma(rho) zeta(rho-1)/zeta'(rho) beta^-rho. Pairing rho with
// its conjugate, the zeros up to height gamma_K contribute
//
//     2 sum_{k<=K} Re[ Gamma(rho_k) zeta(rho_k - 1)/zeta'(rho_k) beta^-rho_k ]
//
// to f(beta). |Gamma(1/2 + i gamma)| = sqrt(pi / cosh(pi gamma)) makes these
// terms tiny, which is what the checks below quantify.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "coprime/complex_special.hpp"
#include "coprime/constants.hpp"
#include "coprime/error.hpp"
#include "coprime/f_series.hpp"

namespace coprime {

inline constexpr double kZeroResidualTol = 1e-5;
inline constexpr double kDerivativeCheckTol = 1e-6;

struct ZeroEntry {
  double gamma = 0.0;
  double residual = 0.0;        // |zeta(1/2 + i gamma)|
  double derivative_gap = 0.0;  // |zeta' - central difference|
  bool validated = false;
};

struct ZeroList {
  std::vector<ZeroEntry> entries;
  std::string source;

  std::size_t validated_count() const {
    std::size_t n = 0;
    for (const auto& e : entries) n += e.validated;
    return n;
  }

  std::vector<double> validated_gammas() const {
    std::vector<double> g;
    for (const auto& e : entries)
      if (e.validated) g.push_back(e.gamma);
    return g;
  }
};

/// Central difference of zeta at s with step h.
inline Complex zeta_central_difference(Complex s, double h = 1e-5) {
  return (zeta_complex(s + h) - zeta_complex(s - h)) / (2.0 * h);
}

inline ZeroEntry validate_zero(double gamma) {
  ZeroEntry e;
  e.gamma = gamma;
  if (gamma > 100.0) {  // outside the zeta window
    e.residual = INFINITY;
    return e;
  }
  const Complex rho(0.5, gamma);
  e.residual = std::abs(zeta_complex(rho));
  e.derivative_gap = std::abs(zeta_derivative(rho) - zeta_central_difference(rho));
  e.validated = e.residual <= kZeroResidualTol && e.derivative_gap <= kDerivativeCheckTol;
  return e;
}

/// Parse a zeros file: one positive decimal per line, strictly ascending,
/// '#' comment lines and blank lines ignored.
inline ZeroList parse_zeros(std::string_view text, std::string source = "<memory>") {
  ZeroList list;
  list.source = std::move(source);
  std::size_t line_no = 0;
  double previous = 0.0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
      line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    double gamma = 0.0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), gamma);
    if (ec != std::errc{} || ptr != line.data() + line.size())
      throw FormatError("not a decimal number: '" + std::string(line) + "'", line_no);
    if (!(gamma > 0.0) || !std::isfinite(gamma))
      throw FormatError("zero ordinates must be positive", line_no);
    if (!list.entries.empty() && !(gamma > previous))
      throw FormatError("ordinates must be strictly increasing", line_no);
    previous = gamma;
    list.entries.push_back(validate_zero(gamma));
  }
  return list;
}

inline ZeroList load_zeros(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("load_zeros: cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_zeros(text, path);
}

/// Gamma(rho) zeta(rho - 1) / zeta'(rho) for rho = 1/2 + i gamma.
inline Complex zero_residue_factor(double gamma) {
  const Complex rho(0.5, gamma);
  return gamma_complex(rho) * zeta_complex(rho - 1.0) / zeta_derivative(rho);
}

struct OscillationValue {
  double value = 0.0;
  double envelope = 0.0;  // 2 sum |factor_k| beta^{-1/2}
  double imag_residual = 0.0;
};

/// Truncated zero sum over the first K validated zeros.
inline OscillationValue oscillation_term(double beta, const ZeroList& zeros, std::size_t k) {
  check_beta(beta, "oscillation_term");
  if (beta < 1e-6 || beta > 1.0) throw InvalidArgument("oscillation_term: beta must lie in [1e-6, 1]");
  const auto gammas = zeros.validated_gammas();
  if (gammas.empty()) throw InvalidArgument("oscillation_term: no validated zeros");
  if (k < 1 || k > gammas.size())
    throw InvalidArgument("oscillation_term: K must lie in [1, " + std::to_string(gammas.size()) + "]");

  OscillationValue out;
  const double log_beta = std::log(beta);
  double value = 0.0, amplitude = 0.0, imag = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const Complex factor = zero_residue_factor(gammas[i]);
    const Complex rho(0.5, gammas[i]);
    const Complex term = factor * std::exp(-rho * log_beta);
    const Complex conj_term = std::conj(factor) * std::exp(-std::conj(rho) * log_beta);
    const Complex pair = term + conj_term;
    value += pair.real();
    imag += pair.imag();
    amplitude += 2.0 * std::abs(factor);
  }
  out.value = value;
  out.envelope = amplitude / std::sqrt(beta);
  out.imag_residual = imag;
  return out;
}

struct SmoothRemainderPoint {
  double beta = 0.0;
  double smooth_residual = 0.0;  // e_f + 5/6 - beta
  double residual_bound = 0.0;   // 3 beta^2 (1 + |ln beta|)
  double envelope = 0.0;         // zero-sum amplitude (0 when no zeros)
  double f_error_bound = 0.0;
  double envelope_to_main = 0.0;  // envelope / (density / beta^2)
};

struct SmoothRemainderReport {
  std::vector<SmoothRemainderPoint> points;
  double max_abs_smooth_residual = 0.0;
  bool smooth_model_holds = true;  // every |residual| <= residual_bound
  bool has_envelope = false;
  double max_envelope_to_main = 0.0;
  // Ratio of envelope to evaluator error bound; values above 1 mean the zero
  // oscillation is resolvable in e_f at that beta.
  double max_envelope_to_error_bound = 0.0;
};

/// Compare measured e_f with -5/6 + beta and with the zero-sum envelope.
inline SmoothRemainderReport smooth_remainder_check(const std::vector<ScanRecord>& records,
                                                    const ZeroList& zeros, std::size_t k = 3) {
  SmoothRemainderReport rep;
  const std::size_t usable = std::min(k, zeros.validated_count());
  rep.has_envelope = usable > 0;
  for (const auto& r : records) {
    if (!r.ok()) continue;
    SmoothRemainderPoint p;
    p.beta = r.beta;
    p.smooth_residual = r.smooth_residual;
    p.residual_bound = 3.0 * r.beta * r.beta * (1.0 + std::abs(std::log(r.beta)));
    p.f_error_bound = r.f_error_bound;
    if (rep.has_envelope && r.beta >= 1e-6 && r.beta <= 1.0) {
      p.envelope = oscillation_term(r.beta, zeros, usable).envelope;
      p.envelope_to_main = p.envelope / (ReferenceConstants::density / (r.beta * r.beta));
      rep.max_envelope_to_main = std::max(rep.max_envelope_to_main, p.envelope_to_main);
      if (p.f_error_bound > 0.0)
        rep.max_envelope_to_error_bound =
            std::max(rep.max_envelope_to_error_bound, p.envelope / p.f_error_bound);
    }
    rep.max_abs_smooth_residual = std::max(rep.max_abs_smooth_residual, std::abs(p.smooth_residual));
    rep.smooth_model_holds = rep.smooth_model_holds && std::abs(p.smooth_residual) <= p.residual_bound;
    rep.points.push_back(p);
  }
  return rep;
}

}  // namespace coprime
