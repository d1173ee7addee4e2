#include <gtest/gtest.h>

#include "scatterkit/wavepacket.hpp"

using namespace scatterkit;

namespace {

double norm_sum(const SpectralProfile& p) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p.weights[i] * std::norm(p.amplitudes[i]);
  return s;
}

std::vector<double> times(double t_max, int n) {
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = t_max * i / (n - 1);
  return t;
}

}  // namespace

TEST(Profile, NormalizedAndCentred) {
  const auto p = gaussian_profile(5.0, 0.5, 64, 5.0);
  EXPECT_EQ(p.size(), 64u);
  EXPECT_NEAR(norm_sum(p), 1.0, 1e-14);
  double mean = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) mean += p.weights[i] * std::norm(p.amplitudes[i]) * p.k_grid[i];
  EXPECT_NEAR(mean, 5.0, 1e-10);
  EXPECT_GT(p.k_grid.front(), 2.5);
  EXPECT_LT(p.k_grid.back(), 7.5);
  ASSERT_TRUE(p.shape.has_value());
  EXPECT_EQ(p.shape->k0, 5.0);
}

TEST(Profile, RejectsBadInput) {
  EXPECT_THROW(gaussian_profile(5.0, 0.0, 64, 5.0), InvalidArgument);
  EXPECT_THROW(gaussian_profile(1.0, 0.5, 64, 5.0), InvalidArgument);
  EXPECT_THROW(gaussian_profile(5.0, 0.5, 0, 5.0), InvalidArgument);
}

TEST(Norm, FreeAndDeltaConstant) {
  const auto prof = gaussian_profile(5.0, 0.5, 64, 5.0);
  for (const auto& p : {free_potential(), delta_potential(-1.0), delta_potential(0.7)}) {
    const auto K = build_norm_kernel(p, prof);
    const double n0 = norm_at_time(K, prof, 0.0).N;
    EXPECT_NEAR(n0, 2.0 * kPi, 1e-10);
    for (double t : times(100.0, 21)) EXPECT_LT(std::abs(norm_at_time(K, prof, t).N - n0) / n0, 1e-8) << t;
    EXPECT_LT(norm_drift_bound(prof, delta_function(p)), 1e-8);
  }
}

TEST(Norm, SquareWellDriftsWithinBound) {
  const auto p = square_well(0.5, 2.0);
  const auto prof = gaussian_profile(5.0, 0.5, 64, 5.0);
  const auto K = build_norm_kernel(p, prof);
  const double bound = norm_drift_bound(prof, delta_function(p));
  const double n0 = norm_at_time(K, prof, 0.0).N;
  EXPECT_NEAR(n0, 6.175678111645661, 1e-9);
  double worst = 0.0;
  for (double t : times(100.0, 51)) {
    const auto v = norm_at_time(K, prof, t);
    EXPECT_LT(std::abs(v.imag_residue), 1e-10);
    const double drift = std::abs(v.N - n0);
    EXPECT_LE(drift, bound) << t;
    worst = std::max(worst, drift);
  }
  EXPECT_GT(worst / n0, 1e-6);
}

TEST(Norm, RegularizedSourceIsConstant) {
  const auto p = square_well(0.5, 2.0);
  const auto prof = gaussian_profile(5.0, 0.5, 32, 5.0);
  const auto K = build_norm_kernel(p, prof, OffDiagonal::Regularized);
  const double n0 = norm_at_time(K, prof, 0.0).N;
  EXPECT_NEAR(n0, 2.0 * kPi, 1e-10);
  EXPECT_NEAR(norm_at_time(K, prof, 60.0).N, n0, 1e-10);
}

TEST(Norm, GridRefinement) {
  const auto p = square_well(0.5, 2.0);
  const auto a = gaussian_profile(5.0, 0.5, 1024, 5.0), b = gaussian_profile(5.0, 0.5, 2048, 5.0);
  const auto Ka = build_norm_kernel(p, a), Kb = build_norm_kernel(p, b);
  for (double t : {0.0, 50.0, 100.0}) EXPECT_NEAR(norm_at_time(Ka, a, t).N, norm_at_time(Kb, b, t).N, 1e-6) << t;
}

TEST(Norm, DiagonalLimitIsContinuous) {
  const auto delta = delta_function(square_well(0.5, 2.0));
  const Complex d = delta_diagonal_limit(delta, 5.0);
  EXPECT_LT(std::abs(d - delta(5.0, 5.0 + 1e-5)), 1e-4);
}

TEST(PositionOracle, ConservedNorm) {
  const auto prof = gaussian_profile(5.0, 0.5, 64, 5.0);
  for (const auto& p : {free_potential(), delta_potential(-1.0), square_well(0.5, 2.0)})
    for (double t : {0.0, 20.0}) EXPECT_NEAR(position_space_norm(p, prof, t), 2.0 * kPi, 1e-5) << potential_spec(p) << t;
}

TEST(PositionOracle, RequiresShape) {
  auto prof = gaussian_profile(5.0, 0.5, 16, 5.0);
  prof.shape.reset();
  EXPECT_THROW(position_space_norm(free_potential(), prof, 0.0), InvalidArgument);
}

TEST(Norm, LinearUnsupported) {
  EXPECT_THROW(delta_function(make_potential(Family::Linear, {{"g", 1.0}})), UnsupportedOperation);
}
