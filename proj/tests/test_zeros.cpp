#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "coprime/f_series.hpp"
#include "coprime/zeros.hpp"

using namespace coprime;

namespace {
const std::string kZerosFile = std::string(COPRIME_SOURCE_DIR) + "/data/zeros.txt";
}

TEST(Zeros, ShippedFileValidates) {
  const ZeroList z = load_zeros(kZerosFile);
  ASSERT_GE(z.entries.size(), 10u);
  EXPECT_EQ(z.validated_count(), z.entries.size());
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_LE(z.entries[i].residual, 1e-5) << z.entries[i].gamma;
    EXPECT_LE(z.entries[i].derivative_gap, kDerivativeCheckTol) << z.entries[i].gamma;
  }
  EXPECT_EQ(z.source, kZerosFile);
}

TEST(Zeros, ParseExamples) {
  const ZeroList three = parse_zeros("# first zeros\n14.134725\n21.022040\n\n25.010858\n");
  EXPECT_EQ(three.entries.size(), 3u);
  EXPECT_EQ(three.validated_count(), 3u);

  const ZeroList empty = parse_zeros("");
  EXPECT_TRUE(empty.entries.empty());
  EXPECT_THROW(oscillation_term(1e-3, empty, 1), InvalidArgument);

  const ZeroList bogus = parse_zeros("15.0\n");
  ASSERT_EQ(bogus.entries.size(), 1u);
  EXPECT_FALSE(bogus.entries[0].validated);
  EXPECT_GT(bogus.entries[0].residual, 0.1);
  EXPECT_THROW(oscillation_term(1e-3, bogus, 1), InvalidArgument);
}

TEST(Zeros, FormatErrors) {
  try {
    parse_zeros("14.134725\n# c\n21.0x\n");
    ADD_FAILURE();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  try {
    parse_zeros("21.022040\n14.134725\n");
    ADD_FAILURE();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_zeros("-3\n"), FormatError);
  EXPECT_THROW(parse_zeros("14.134725\n14.134725\n"), FormatError);
  EXPECT_THROW(load_zeros("/nonexistent/zeros.txt"), InvalidArgument);
}

TEST(Zeros, ResidueFactor) {
  const double g1 = 14.134725141734693;
  const double closed = std::sqrt(std::numbers::pi / std::cosh(std::numbers::pi * g1));
  const double gamma_mod = std::abs(gamma_complex({0.5, g1}));
  EXPECT_NEAR(gamma_mod, closed, 0.2 * closed);
  EXPECT_NEAR(gamma_mod, 5.7088e-10, 1e-13);
  const double f1 = std::abs(zero_residue_factor(g1));
  EXPECT_NEAR(f1, 8.82e-10, 0.01e-10);
  EXPECT_NEAR(std::abs(zeta_derivative({0.5, g1})), 0.79316, 1e-5);
}

TEST(Oscillation, EnvelopeAndValue) {
  const ZeroList z = load_zeros(kZerosFile);
  const OscillationValue v = oscillation_term(1e-4, z, 3);
  EXPECT_LE(std::abs(v.value), 5e-7);
  EXPECT_LE(std::abs(v.value), v.envelope * (1.0 + 1e-12));
  EXPECT_NEAR(v.imag_residual, 0.0, 1e-20);
  EXPECT_LE(v.envelope / (6.0 / (M_PI * M_PI) / 1e-8), 1e-6);
  EXPECT_THROW(oscillation_term(2.0, z, 3), InvalidArgument);
  EXPECT_THROW(oscillation_term(1e-4, z, 0), InvalidArgument);
  EXPECT_THROW(oscillation_term(1e-4, z, z.entries.size() + 1), InvalidArgument);
}

TEST(Oscillation, LogPeriodicity) {
  // With one zero the term is A beta^{-1/2} cos(gamma ln(1/beta) + phase).
  const ZeroList z = parse_zeros("14.134725141734693\n");
  const double beta = 1e-3;
  const double period = std::exp(-2.0 * std::numbers::pi / 14.134725141734693);
  const double a = oscillation_term(beta, z, 1).value * std::sqrt(beta);
  const double b = oscillation_term(beta * period, z, 1).value * std::sqrt(beta * period);
  EXPECT_NEAR(a, b, 1e-12 * std::abs(a) + 1e-25);
}

TEST(SmoothRemainder, ModelHolds) {
  const ZeroList z = load_zeros(kZerosFile);
  const auto records = scan(make_grid(1e-4, 1e-2, 20, true), 1e-12);
  const SmoothRemainderReport rep = smooth_remainder_check(records, z, 3);
  EXPECT_TRUE(rep.smooth_model_holds);
  EXPECT_TRUE(rep.has_envelope);
  EXPECT_EQ(rep.points.size(), 20u);
  EXPECT_LE(rep.max_envelope_to_main, 1e-6);
  for (const auto& p : rep.points) EXPECT_LE(std::abs(p.smooth_residual), p.residual_bound) << p.beta;

  const SmoothRemainderReport bare = smooth_remainder_check(records, ZeroList{}, 3);
  EXPECT_FALSE(bare.has_envelope);
  EXPECT_TRUE(bare.smooth_model_holds);
  EXPECT_EQ(bare.max_envelope_to_main, 0.0);
}
