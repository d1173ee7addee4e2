#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "scatterkit/analytic_states.hpp"
#include "scatterkit/common.hpp"
#include "scatterkit/nonorth_delta.hpp"
#include "scatterkit/overlap_engine.hpp"
#include "scatterkit/quadrature.hpp"

namespace scatterkit {

struct GaussianShape {
  double k0;
  double sigma;
  double span;
};

struct SpectralProfile {
  std::vector<double> k_grid;
  std::vector<Complex> amplitudes;
  std::vector<double> weights;
  std::optional<GaussianShape> shape;  // set by gaussian_profile

  std::size_t size() const { return k_grid.size(); }
};

// |a(k)|² ∝ exp(−(k−k₀)²/(2σ²)) on Gauss-Legendre nodes over [k₀−span·σ, k₀+span·σ],
// scaled to Σ w|a|² = 1.
inline SpectralProfile gaussian_profile(double k0, double sigma, std::size_t n, double span) {
  require(sigma > 0.0 && span > 0.0, "gaussian_profile: sigma and span must be positive");
  require(n >= 16, "gaussian_profile: need n >= 16");
  require(k0 - span * sigma > 0.0, "gaussian_profile: grid crosses k = 0");
  const double lo = k0 - span * sigma, hi = k0 + span * sigma;
  const auto rule = quad::gauss_legendre(n, lo, hi);
  SpectralProfile p;
  p.k_grid = rule.nodes;
  p.weights = rule.weights;
  p.shape = GaussianShape{k0, sigma, span};
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = (p.k_grid[i] - k0) / sigma;
    p.amplitudes.push_back(std::exp(-0.25 * d * d));
    norm += p.weights[i] * std::norm(p.amplitudes.back());
  }
  for (auto& a : p.amplitudes) a /= std::sqrt(norm);
  return p;
}

// Off-diagonal overlap source: the R,T-only Δ, or the ε-regularized finite
// remainder (identically zero).
enum class OffDiagonal { AmplitudeDelta, Regularized };

using DeltaFn = std::function<Complex(double, double)>;

inline DeltaFn delta_function(const Potential& p, OffDiagonal src = OffDiagonal::AmplitudeDelta) {
  if (p.family == Family::Linear) throw UnsupportedOperation("wavepacket: no non-orthogonality term for linear family");
  if (src == OffDiagonal::Regularized) {
    return [p](double k1, double k2) { return regularized_overlap(p, k2, k1, 1e-3).finite_remainder; };
  }
  return [p](double k1, double k2) { return delta_term_1d(p, k1, k2); };
}

// Δ(k, k) as the continuous limit: symmetric differences at h and h/2,
// Richardson-combined.
inline Complex delta_diagonal_limit(const DeltaFn& delta, double k) {
  const double h = 1e-3 * k;
  auto sym = [&](double s) { return 0.5 * (delta(k, k + s) + delta(k, k - s)); };
  return (4.0 * sym(0.5 * h) - sym(h)) / 3.0;
}

// O_ij = ⟨φ_i|φ_j⟩ minus its δ channel: Δ(k_j, k_i) off the diagonal and the
// continuous limit on it. delta_weight_i = 2π(1+|R|²+|T|²)/2 collects the
// δ channel, which survives the double sum only on the diagonal.
struct NormKernel {
  std::vector<Complex> O;  // row-major n × n
  std::vector<double> delta_weight;
  std::size_t n = 0;
};

inline NormKernel build_norm_kernel(const Potential& p, const SpectralProfile& prof,
                                    OffDiagonal src = OffDiagonal::AmplitudeDelta) {
  const DeltaFn delta = delta_function(p, src);
  NormKernel K;
  K.n = prof.size();
  K.O.assign(K.n * K.n, 0.0);
  K.delta_weight.resize(K.n);
  parallel_for(K.n, [&](std::size_t i) {
    const double ki = prof.k_grid[i];
    const auto c = coefficients(p, ki);
    K.delta_weight[i] = 2.0 * kPi * 0.5 * (1.0 + std::norm(c.R) + std::norm(c.T));
    for (std::size_t j = 0; j < K.n; ++j) {
      const double kj = prof.k_grid[j];
      K.O[i * K.n + j] = (i == j) ? (src == OffDiagonal::Regularized ? Complex(0.0) : delta_diagonal_limit(delta, ki))
                                  : delta(kj, ki);
    }
  });
  return K;
}

struct NormValue {
  double t = 0.0;
  double N = 0.0;
  double imag_residue = 0.0;
};

// N(t) = Σ_i w_i |a_i|² δ-weight_i + Σ_ij w_i w_j a_i* a_j e^{i(E_i−E_j)t} O_ij, E = k²/2.
inline NormValue norm_at_time(const NormKernel& K, const SpectralProfile& prof, double t) {
  require(K.n == prof.size(), "norm_at_time: kernel and profile sizes differ");
  std::vector<Complex> b(K.n);
  for (std::size_t i = 0; i < K.n; ++i) {
    const double E = 0.5 * prof.k_grid[i] * prof.k_grid[i];
    b[i] = prof.weights[i] * prof.amplitudes[i] * std::exp(-kI * E * t);
  }
  Complex total = 0.0;
  for (std::size_t i = 0; i < K.n; ++i) total += prof.weights[i] * std::norm(prof.amplitudes[i]) * K.delta_weight[i];
  for (std::size_t i = 0; i < K.n; ++i) {
    Complex row = 0.0;
    for (std::size_t j = 0; j < K.n; ++j) row += K.O[i * K.n + j] * b[j];
    total += std::conj(b[i]) * row;
  }
  return {t, total.real(), total.imag()};
}

inline NormValue norm_at_time(const Potential& p, const SpectralProfile& prof, double t,
                              OffDiagonal src = OffDiagonal::AmplitudeDelta) {
  return norm_at_time(build_norm_kernel(p, prof, src), prof, t);
}

// 2 Σ_{i≠j} w_i w_j |a_i||a_j||Δ(k_i, k_j)|: the off-diagonal part is the only
// time-dependent piece, so |N(t) − N(0)| cannot exceed this.
inline double norm_drift_bound(const SpectralProfile& prof, const DeltaFn& delta) {
  double bound = 0.0;
  for (std::size_t i = 0; i < prof.size(); ++i)
    for (std::size_t j = 0; j < prof.size(); ++j)
      if (i != j)
        bound += prof.weights[i] * prof.weights[j] * std::abs(prof.amplitudes[i]) * std::abs(prof.amplitudes[j]) *
                 std::abs(delta(prof.k_grid[i], prof.k_grid[j]));
  return 2.0 * bound;
}

struct PositionOracleOptions {
  double pad = 10.0;               // half-width in units of σ_x = 1/(2σ)
  double x_panel = 0.8;            // 16-point panels in x
  double k_phase_per_panel = 8.0;  // max Δk·W per 16-point k panel
};

// ∫|ψ(t,x)|² dx with ψ = ∫dk a(k) e^{−iEt} φ_k(x) evaluated by brute force:
// composite Gauss-Legendre in k fine enough for the whole x window, and in x
// over [−W, W], W = pad·σ_x + v_max·t.
inline double position_space_norm(const Potential& p, const SpectralProfile& prof, double t,
                                  const PositionOracleOptions& opt = {}) {
  require(prof.shape.has_value(), "position_space_norm: profile must come from gaussian_profile");
  const auto g = *prof.shape;
  const double klo = g.k0 - g.span * g.sigma, khi = g.k0 + g.span * g.sigma;
  const double sigma_x = 1.0 / (2.0 * g.sigma);
  const double W = opt.pad * sigma_x + khi * std::abs(t) + (p.family == Family::SquareWell ? 0.5 * p.width : 0.0);

  // Normalization of the continuous amplitude matches the discrete profile.
  const double norm_scale = std::abs(prof.amplitudes[0]) /
                            std::exp(-0.25 * std::pow((prof.k_grid[0] - g.k0) / g.sigma, 2));
  const std::size_t kp = static_cast<std::size_t>(std::ceil((khi - klo) * W / opt.k_phase_per_panel)) + 1;
  static const quad::Rule base = quad::gauss_legendre(16);
  std::vector<double> ks, wk;
  const double hk = (khi - klo) / static_cast<double>(kp);
  for (std::size_t p_ = 0; p_ < kp; ++p_)
    for (std::size_t i = 0; i < 16; ++i) {
      ks.push_back(klo + hk * (p_ + 0.5 * (base.nodes[i] + 1.0)));
      wk.push_back(0.5 * hk * base.weights[i]);
    }
  std::vector<ScatteringCoefficients> cs(ks.size());
  std::vector<Complex> cw(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    cs[i] = coefficients(p, ks[i]);
    const double d = (ks[i] - g.k0) / g.sigma;
    cw[i] = wk[i] * norm_scale * std::exp(-0.25 * d * d) * std::exp(-kI * 0.5 * ks[i] * ks[i] * t);
  }
  // x panels, aligned with the potential's breakpoints.
  std::vector<double> breaks = {-W};
  if (p.family == Family::SquareWell) breaks.insert(breaks.end(), {-0.5 * p.width, 0.5 * p.width});
  if (p.family == Family::Delta) breaks.push_back(0.0);
  breaks.push_back(W);
  std::vector<double> xs, wx;
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    const double lo = breaks[s], hi = breaks[s + 1];
    const std::size_t np = static_cast<std::size_t>(std::ceil((hi - lo) / opt.x_panel));
    const double h = (hi - lo) / static_cast<double>(np);
    for (std::size_t q = 0; q < np; ++q)
      for (std::size_t i = 0; i < 16; ++i) {
        xs.push_back(lo + h * (q + 0.5 * (base.nodes[i] + 1.0)));
        wx.push_back(0.5 * h * base.weights[i]);
      }
  }
  std::vector<double> dens(xs.size());
  parallel_for(xs.size(), [&](std::size_t m) {
    Complex psi = 0.0;
    for (std::size_t i = 0; i < ks.size(); ++i) psi += cw[i] * eval_wavefunction(p, cs[i], xs[m]);
    dens[m] = wx[m] * std::norm(psi);
  });
  double total = 0.0;
  for (double d : dens) total += d;
  return total;
}

}  // namespace scatterkit
