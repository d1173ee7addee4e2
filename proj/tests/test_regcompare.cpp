#include <gtest/gtest.h>

#include "scatterkit/regcompare.hpp"

using namespace scatterkit;
using namespace scatterkit::reg;

TEST(ClosedForms, AgainstQuadrature) {
  quad::AdaptiveOptions opt;
  opt.abs_tol = 1e-14;
  opt.rel_tol = 1e-13;
  opt.initial_panels = 200;
  const double k1 = 1.1, k2 = 1.7, eps = 0.05;
  auto f1 = [&](double x) { return std::exp(kI * (k1 - k2) * x); };
  EXPECT_LT(std::abs(I1_closed(-3.0, 40.0, k1, k2) - quad::integrate(f1, -3.0, 40.0, opt).value), 1e-11);
  auto f2 = [&](double x) { return std::exp(kI * Complex(k1 - k2, 2.0 * eps) * x); };
  EXPECT_LT(std::abs(I2_closed(0.0, 30.0, k1, k2, eps) - quad::integrate(f2, 0.0, 30.0, opt).value), 1e-11);
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_LT(std::abs(I2_closed(0.0, inf, k1, k2, eps) - quad::integrate(f2, 0.0, 600.0, opt).value), 1e-11);
  EXPECT_EQ(I1_closed(0.0, 5.0, 1.0, 1.0), Complex(5.0));
  EXPECT_THROW(I2_closed(0.0, 1.0, k1, k2, 0.0), InvalidArgument);
}

TEST(Lorentzian, ModulusAndIntegral) {
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    for (double dk : {0.0, 0.3, -2.0}) EXPECT_NEAR(I2_lorentzian(dk, eps) * (dk * dk + 4 * eps * eps), 1.0, 1e-12);
    EXPECT_NEAR(I2_lorentzian_integral(eps) / (kPi / (2.0 * eps)), 1.0, 1e-8) << eps;
  }
}

TEST(Normalization, OracleIsTwiceTheStatedValue) {
  for (auto [L, Lam] : {std::pair{0.0, 50.0}, {-3.0, 17.0}}) {
    const auto r = I1_normalization(L, Lam);
    EXPECT_NEAR(r.oracle / r.dirichlet, 1.0, 1e-6);
    EXPECT_NEAR(r.ratio_to_stated, 2.0, 2e-6);
    EXPECT_EQ(r.stated_value, kPi * (Lam - L));
  }
  EXPECT_THROW(I1_normalization(1.0, 1.0), InvalidArgument);
}

TEST(Smeared, ConvergeToTwoPi) {
  double prev = 1e300;
  for (double lam : {5.0, 10.0, 20.0}) {
    const double e = std::abs(smeared_I1(lam, 1.0) - 2.0 * kPi);
    EXPECT_LE(e, prev + 1e-12);
    prev = e;
  }
  EXPECT_LT(prev, 1e-8);
  EXPECT_NEAR(smeared_I2(1e-6, 1.0), 2.0 * kPi, 2e-5);
  EXPECT_GT(std::abs(smeared_I2(1e-1, 1.0) - 2.0 * kPi), std::abs(smeared_I2(1e-2, 1.0) - 2.0 * kPi));
}

TEST(BoundaryResidual, FreeVanishes) {
  for (double eps : {1e-1, 1e-2, 1e-3})
    for (auto [k1, k2] : {std::pair{1.1, 1.7}, {0.3, 2.5}})
      EXPECT_LT(std::abs(boundary_reduction_residual(free_potential(), k1, k2, eps, {-40.0, -10.0})), 1e-9);
}

TEST(BoundaryResidual, SquareWellLinearInEps) {
  const auto p = square_well(0.5, 2.0);
  const auto s = residual_scaling(p, 1.1, 1.7, {-40.0, -10.0}, {1e-4, 2e-4, 4e-4, 6e-4, 8e-4, 1e-3});
  EXPECT_GE(s.fit.r2, 0.999);
  EXPECT_GT(s.fit.slope, 0.0);
  EXPECT_NEAR(s.magnitude.back(), 7.48e-3, 1e-4);
  for (double m : s.magnitude) EXPECT_GT(m, 1e-6);
  EXPECT_THROW(boundary_reduction_residual(p, 1.1, 1.7, 1e-3, {-40.0, 0.0}), InvalidArgument);
  EXPECT_THROW(boundary_reduction_residual(sech2_potential(-0.7), 1.1, 1.7, 1e-3, {-40.0, -10.0}), InvalidArgument);
}

TEST(LinearFit, ExactLine) {
  const auto f = linear_fit({1, 2, 3, 4}, {3, 5, 7, 9});
  EXPECT_NEAR(f.slope, 2.0, 1e-14);
  EXPECT_NEAR(f.intercept, 1.0, 1e-14);
  EXPECT_NEAR(f.r2, 1.0, 1e-14);
}

TEST(Compare, Report) {
  const auto r = compare(square_well(0.5, 2.0), 1.1, 1.7, 1e-3, 200.0);
  EXPECT_TRUE(r.leading_delta_match);
  EXPECT_NEAR(r.smeared_target, 2.0 * kPi, 0.0);
  EXPECT_LT(std::abs(r.next_order_difference - Complex(0.0, 1.0 / 0.6)), 1e-12);
  EXPECT_LT(std::abs(r.cesaro_difference), 0.05);
  EXPECT_NEAR(r.normalization.ratio_to_stated, 2.0, 1e-5);
  EXPECT_NEAR(r.lorentzian_integral / r.lorentzian_closed, 1.0, 1e-8);
  EXPECT_GT(std::abs(r.boundary_residual), 1e-3);
  EXPECT_LT(std::abs(r.I2 - Complex(0.0, 1.0) / Complex(-0.6, 2e-3)), 1e-12);
  EXPECT_LT(std::abs(compare(free_potential(), 1.1, 1.7, 1e-3, 200.0).boundary_residual), 1e-12);
  EXPECT_THROW(compare(free_potential(), 1.1, 1.1, 1e-3, 200.0), InvalidArgument);
}
