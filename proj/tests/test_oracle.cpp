#include <gtest/gtest.h>

#include <random>

#include "scatterkit/nonorth_delta.hpp"
#include "scatterkit/oracle.hpp"

using namespace scatterkit;

namespace {

const std::vector<std::pair<double, double>> kPairs = {{1.1, 1.7}, {0.4, 0.9}, {2.3, 1.2}, {3.1, 0.6}, {0.8, 2.9},
                                                        {1.5, 2.05}, {4.2, 3.3}, {0.25, 1.45}, {2.7, 3.6}, {5.0, 1.9}};

}  // namespace

TEST(QuadOverlap, MatchesClosedForm) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> k(0.1, 5.0), v(-3.0, 3.0), a(0.2, 4.0), x(0.5, 20.0), u(0.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const int fam = static_cast<int>(u(rng));
    const Potential p = fam == 0 ? free_potential() : fam == 1 ? delta_potential(v(rng)) : square_well(v(rng), a(rng));
    double k1 = k(rng), k2 = k(rng);
    if (p.family == Family::SquareWell) {
      if (std::abs(inside_wavenumber(k1, p.strength)) < 1e-6) k1 += 0.1;
      if (std::abs(inside_wavenumber(k2, p.strength)) < 1e-6) k2 += 0.1;
    }
    const double h = p.family == Family::SquareWell ? 0.5 * p.width : 0.0;
    const WindowSpec w{-h - x(rng), h + x(rng)};
    const Complex q = oracle::quad_overlap(p, k1, k2, w), c = overlap_window(p, k1, k2, w);
    ASSERT_LT(std::abs(q - c), 1e-9 * std::max(1.0, std::abs(c))) << potential_spec(p) << " " << k1 << " " << k2;
  }
}

TEST(Cesaro, FreeAndDeltaVanish) {
  for (const auto& p : {free_potential(), delta_potential(-1.0)})
    for (auto [k1, k2] : {std::pair{1.1, 1.7}, {0.6, 2.3}}) {
      const auto c = oracle::cesaro_delta_extract(p, k1, k2, 200.0);
      EXPECT_LT(std::abs(c.averaged), 1e-9) << potential_spec(p);
      EXPECT_LT(std::abs(c.plain_average), 0.05);
    }
}

TEST(Cesaro, SquareWellMatchesAmplitudeFormula) {
  const auto p = square_well(0.5, 2.0);
  for (auto [k1, k2] : kPairs) {
    const auto c = oracle::cesaro_delta_extract(p, k1, k2, 1000.0 * p.width);
    const Complex d = delta_term_1d(p, k1, k2);
    EXPECT_GT(std::abs(c.averaged), 1e-6);
    EXPECT_LT(std::abs(c.averaged - d), 1e-6) << k1 << " " << k2;
  }
}

TEST(Cesaro, UncorrectedEstimateConvergesWithLambda) {
  const auto p = square_well(0.5, 2.0);
  const Complex d = delta_term_1d(p, 1.1, 1.7);
  const auto a = oracle::cesaro_delta_extract(p, 1.1, 1.7, 100.0);
  const auto b = oracle::cesaro_delta_extract(p, 1.1, 1.7, 200.0);
  EXPECT_LT(std::abs(b.plain_estimate - d), std::abs(a.plain_estimate - d));
  EXPECT_NEAR(b.convergence_estimate / a.convergence_estimate, 0.5, 0.05);
  EXPECT_LT(std::abs(a.plain_estimate - d), a.convergence_estimate);
  EXPECT_GT(a.cesaro_change, 0.0);
}

TEST(Cesaro, Sech2AgainstSubtraction) {
  const auto p = sech2_potential(-0.7);
  const auto c = oracle::cesaro_delta_extract(p, 1.1, 1.7, 200.0);
  EXPECT_LT(std::abs(c.averaged - oracle::sech2_delta_subtracted(p, 1.1, 1.7)), 1e-6);
}

TEST(Cesaro, Preconditions) {
  const auto p = square_well(0.5, 2.0);
  EXPECT_THROW(oracle::cesaro_delta_extract(p, 1.1, 1.1, 2000.0), DomainError);
  EXPECT_THROW(oracle::cesaro_delta_extract(p, 1.1, 1.7, 5.0), InvalidArgument);
  EXPECT_THROW(oracle::cesaro_delta_extract(p, 1.1, 1.7, 2000.0, 10), InvalidArgument);
}

TEST(Radial, OdeMatchesAnalytic) {
  const auto V = oracle::radial_square_well(-1.0, 1.5);
  for (double k : {0.5, 1.1, 1.7, 3.0}) {
    const auto num = oracle::radial_ode_solve(V, k, 1.5 + 16.0 * kPi / k);
    const auto ana = oracle::radial_square_well_analytic(k, -1.0, 1.5);
    EXPECT_LT(std::abs(num.T - ana.T), 1e-8) << k;
    EXPECT_LT(std::abs(num.R - ana.R), 1e-8) << k;
    EXPECT_NEAR(std::abs(num.T), std::abs(num.R), 1e-9);
    EXPECT_LT(num.fit_residual, 1e-8);
  }
}

TEST(Radial, FitWindowStability) {
  const auto V = oracle::radial_square_well(2.0, 1.0);
  const auto a = oracle::radial_ode_solve(V, 1.3, 30.0), b = oracle::radial_ode_solve(V, 1.3, 61.0);
  EXPECT_LT(std::abs(a.T - b.T), 1e-8);
  EXPECT_LT(std::abs(a.R - b.R), 1e-8);
  EXPECT_THROW(oracle::radial_ode_solve(V, 1.3, 0.5), InvalidArgument);
}

TEST(Radial, CesaroAgainstFormula) {
  const double k1 = 1.1, k2 = 1.7;
  const auto V = oracle::radial_square_well(-1.0, 1.5);
  const double r_max = 1.5 + 16.0 * kPi / k1;
  const auto s1 = oracle::radial_ode_solve(V, k1, r_max), s2 = oracle::radial_ode_solve(V, k2, r_max);
  const Complex f = delta_term_radial(s1.T, s1.R, s2.T, s2.R, s1.phi0, s1.dphi0, s2.phi0, s2.dphi0, k1, k2);
  const Complex c = oracle::radial_cesaro_delta(V, k1, k2, 16.0 * kPi / 0.6).averaged;
  EXPECT_GT(std::abs(f), 1e-3);
  EXPECT_LT(std::abs(f - c), 1e-5);
  EXPECT_LT(std::abs(oracle::radial_cesaro_delta(oracle::radial_free(), k1, k2, 16.0 * kPi / 0.6).averaged), 1e-8);
}
