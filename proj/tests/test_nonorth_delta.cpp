#include <gtest/gtest.h>

#include "scatterkit/nonorth_delta.hpp"
#include "scatterkit/oracle.hpp"

using namespace scatterkit;

namespace {

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  return g;
}

const std::vector<std::pair<double, double>> kPairs = {{1.1, 1.7}, {0.4, 0.9}, {2.3, 1.2}, {3.1, 0.6}, {0.8, 2.9},
                                                        {1.5, 2.05}, {4.2, 3.3}, {0.25, 1.45}, {2.7, 3.6}, {5.0, 1.9}};

}  // namespace

TEST(Delta1d, FreeAndDeltaPotentialVanishOnGrid) {
  const auto ks = grid(0.1, 6.0, 50);
  for (const auto& p : {free_potential(), delta_potential(-1.0), delta_potential(2.5)})
    for (double k1 : ks)
      for (double k2 : ks) {
        if (k1 == k2) continue;
        ASSERT_LT(std::abs(delta_term_1d(p, k1, k2)), 1e-10) << potential_spec(p) << " " << k1 << " " << k2;
      }
}

TEST(Delta1d, HermitianSymmetry) {
  for (const auto& p : {square_well(0.5, 2.0), square_well(-1.5, 0.8), sech2_potential(-0.7), sech2_potential(1.2, 0.5)})
    for (auto [k1, k2] : kPairs)
      EXPECT_LT(std::abs(delta_term_1d(p, k2, k1) - std::conj(delta_term_1d(p, k1, k2))), 1e-12) << potential_spec(p);
}

TEST(Delta1d, ContinuousAcrossTheDiagonal) {
  const auto p = square_well(0.5, 2.0);
  for (double k : {0.7, 1.4, 3.0}) {
    const Complex a = delta_term_1d(p, k, k + 1e-4), b = delta_term_1d(p, k, k - 1e-4);
    const Complex c = delta_term_1d(p, k, k + 5e-5);
    EXPECT_LT(std::abs(a - b), 1e-2);
    EXPECT_LT(std::abs(a - c), 1e-2);
    EXPECT_TRUE(std::isfinite(a.real()) && std::isfinite(a.imag()));
  }
}

TEST(Delta1d, SquareWellReferenceValue) {
  const Complex d = delta_term_1d(square_well(0.5, 2.0), 1.1, 1.7);
  EXPECT_NEAR(d.real(), -0.5107976819, 1e-9);
  EXPECT_NEAR(d.imag(), 0.2458867237, 1e-9);
}

TEST(Delta1d, Sech2ReferenceValueAndNonzero) {
  const auto p = sech2_potential(-0.7);
  const Complex d = delta_term_1d(p, 1.1, 1.7);
  EXPECT_NEAR(d.real(), 0.51033874, 1e-7);
  EXPECT_NEAR(d.imag(), 0.07272421, 1e-7);
  for (auto [k1, k2] : kPairs) {
    const Complex g = delta_term_1d(p, k1, k2);
    EXPECT_GT(std::abs(g), 1e-6);
    EXPECT_LT(std::abs(g - oracle::sech2_delta_subtracted(p, k1, k2)), 1e-8) << k1 << " " << k2;
  }
}

TEST(Delta1d, Sech2SubtractionTailDecay) {
  // Error of the subtraction window falls like e^{−2μX}: a factor 4 per ln2/μ.
  const double mu = 1.0;
  const auto p = sech2_potential(-0.7, mu);
  const Complex ref = oracle::sech2_delta_subtracted(p, 1.1, 1.7, 25.0);
  const double X = 4.0;
  const double e1 = std::abs(oracle::sech2_delta_subtracted(p, 1.1, 1.7, X) - ref);
  const double e2 = std::abs(oracle::sech2_delta_subtracted(p, 1.1, 1.7, X + std::log(2.0) / mu) - ref);
  EXPECT_GT(e1 / e2, 3.0);
  EXPECT_LT(e1 / e2, 5.0);
}

TEST(Delta1d, Degenerate) {
  EXPECT_THROW(delta_term_1d(square_well(0.5, 2.0), 1.3, 1.3), DomainError);
  EXPECT_THROW(delta_term_1d(square_well(0.5, 2.0), -1.3, 1.0), InvalidArgument);
}

TEST(SquareWellBlock, AgreesWithGeneral) {
  for (const auto& p : {square_well(0.5, 2.0), square_well(-1.5, 0.8), square_well(3.0, 1.2)})
    for (auto [k1, k2] : kPairs) {
      if (std::abs(inside_wavenumber(k1, p.strength)) < 1e-3 || std::abs(inside_wavenumber(k2, p.strength)) < 1e-3)
        continue;
      EXPECT_LT(std::abs(delta_term_square_well(k1, k2, p) - delta_term_1d(p, k1, k2)), 1e-11)
          << potential_spec(p) << " " << k1 << " " << k2;
    }
}

TEST(SquareWellBlock, PrintedFormDisagrees) {
  const auto p = square_well(0.5, 2.0);
  const Complex printed = delta_term_square_well_printed(1.1, 1.7, p);
  EXPECT_NEAR(printed.real(), -3.1216, 1e-3);
  EXPECT_NEAR(printed.imag(), -0.2002, 1e-3);
  EXPECT_GT(std::abs(printed - delta_term_1d(p, 1.1, 1.7)), 1.0);
}

TEST(SquareWellBlock, VanishesAsWellDisappears) {
  for (double V0 : {1e-2, 1e-4, 1e-6}) {
    const auto p = square_well(V0, 2.0);
    EXPECT_LT(std::abs(delta_term_1d(p, 1.1, 1.7)), 10.0 * V0) << V0;
    EXPECT_LT(std::abs(delta_term_square_well(1.1, 1.7, p)), 10.0 * V0) << V0;
  }
}

TEST(Transparency, IndexAndMomentum) {
  const auto p = square_well(0.5, 2.0);
  for (int n = 1; n <= 4; ++n) {
    const double k = transparency_momentum(n, p);
    ASSERT_TRUE(transparency_index(k, p).has_value());
    EXPECT_EQ(*transparency_index(k, p), n);
    EXPECT_LT(std::abs(coefficients(p, k).R), 1e-12);
  }
  EXPECT_FALSE(transparency_index(1.3, p).has_value());
  EXPECT_NEAR(transparency_momentum(1, p), 1.8621, 1e-4);
  EXPECT_NEAR(transparency_momentum(2, p), 3.29691, 1e-5);
}

TEST(Transparency, MatchesGeneralWithResolvedPhase) {
  for (const auto& p : {square_well(0.5, 2.0), square_well(-1.0, 1.3), square_well(2.0, 3.0)})
    for (int n1 = 1; n1 <= 4; ++n1)
      for (int n2 = 1; n2 <= 4; ++n2) {
        if (n1 == n2) continue;
        const double k1 = transparency_momentum(n1, p), k2 = transparency_momentum(n2, p);
        EXPECT_LT(std::abs(delta_term_transparency(k1, k2, p) - delta_term_1d(p, k1, k2)), 1e-10)
            << potential_spec(p) << " " << n1 << " " << n2;
      }
  const auto p = square_well(0.5, 2.0);
  const double k1 = transparency_momentum(1, p), k2 = transparency_momentum(2, p);
  const Complex d = delta_term_transparency(k1, k2, p);
  EXPECT_NEAR(d.real(), -0.18722, 1e-5);
  EXPECT_NEAR(d.imag(), 0.02562, 1e-5);
  EXPECT_GT(std::abs(delta_term_transparency(k1, k2, p, Convention::Printed) - d), 1e-3);
  EXPECT_THROW(delta_term_transparency(1.3, k2, p), InvalidArgument);
}

TEST(Transparency, Limits) {
  const double a = 2.0;
  EXPECT_LT(std::abs(transparency_formula(1.0 + 1e-7, 1.0, a, 1, 3, Convention::Printed) + a), 1e-6);
  EXPECT_LT(std::abs(transparency_formula(1.0 + 1e-7, 1.0, a, 1, 3) - a), 1e-6);
  const double dk = 2.0 * kPi / a;
  EXPECT_LT(std::abs(transparency_formula(1.0 + dk, 1.0, a, 1, 3, Convention::Printed)), 1e-14);
  EXPECT_LT(std::abs(transparency_formula(1.0 + dk, 1.0, a, 1, 3)), 1e-14);
}

TEST(Radial, FreeWaveCancelsExactly) {
  for (auto [k1, k2] : kPairs) {
    const Complex d = delta_term_radial(1.0, 1.0, 1.0, 1.0, 2.0, 0.0, 2.0, 0.0, k1, k2);
    EXPECT_EQ(d, Complex(0.0));
  }
  EXPECT_GT(std::abs(delta_term_radial(1.0, 1.0, 1.0, 1.0, 2.0, 0.3, 2.0, -0.4, 1.1, 1.7)), 1e-3);
  EXPECT_THROW(delta_term_radial(1.0, 1.0, 1.0, 1.0, 2.0, 0.0, 2.0, 0.0, 1.1, 1.1), DomainError);
}

TEST(Radial, SquareWellAnalyticAgainstCesaro) {
  const auto s1 = oracle::radial_square_well_analytic(1.1, -1.0, 1.5);
  const auto s2 = oracle::radial_square_well_analytic(1.7, -1.0, 1.5);
  const Complex f = delta_term_radial(s1.T, s1.R, s2.T, s2.R, s1.phi0, s1.dphi0, s2.phi0, s2.dphi0, 1.1, 1.7);
  EXPECT_NEAR(f.real(), -0.183462209324, 1e-9);
  const auto V = oracle::radial_square_well(-1.0, 1.5);
  const Complex c = oracle::radial_cesaro_delta(V, 1.1, 1.7, 16.0 * kPi / 0.6).averaged;
  EXPECT_LT(std::abs(f - c), 1e-8);
}

TEST(Report, SquareWellThreeWay) {
  const auto p = square_well(0.5, 2.0);
  const auto r = delta_report(p, 1.1, 1.7);
  EXPECT_EQ(r.closed_form_name, "square_well_block");
  EXPECT_EQ(r.oracle_name, "cesaro");
  EXPECT_LT(r.max_pairwise_disagreement, 1e-6);
  ASSERT_TRUE(r.printed_disagreement.has_value());
  EXPECT_NEAR(*r.printed_disagreement, 2.65, 0.01);
}

TEST(Report, FamiliesAndErrors) {
  EXPECT_EQ(delta_report(free_potential(), 1.1, 1.7).closed_form_name, "zero");
  EXPECT_LT(delta_report(delta_potential(-1.0), 1.1, 1.7).max_pairwise_disagreement, 1e-6);
  const auto p = square_well(0.5, 2.0);
  const auto t = delta_report(p, transparency_momentum(1, p), transparency_momentum(2, p));
  EXPECT_EQ(t.closed_form_name, "transparency");
  EXPECT_LT(t.max_pairwise_disagreement, 1e-6);
  const auto s = delta_report(sech2_potential(-0.7), 1.1, 1.7);
  EXPECT_EQ(s.oracle_name, "asymptotic_subtraction");
  EXPECT_FALSE(s.delta_closed_form.has_value());
  EXPECT_LT(s.max_pairwise_disagreement, 1e-8);
  EXPECT_THROW(delta_report(make_potential(Family::Linear, {{"g", 1.0}}), 1.0, 2.0), UnsupportedOperation);
}
