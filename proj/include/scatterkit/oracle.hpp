#pragma once

#include <Eigen/Dense>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <functional>
#include <vector>

#include "scatterkit/analytic_states.hpp"
#include "scatterkit/common.hpp"
#include "scatterkit/overlap_engine.hpp"
#include "scatterkit/quadrature.hpp"

namespace scatterkit::oracle {

// Adaptive Gauss-Kronrod of φ*_{k₁}φ_{k₂} with initial panels of a quarter
// period of the fastest (k₁+k₂) oscillation and breakpoints at the potential's
// discontinuities.
inline Complex quad_overlap(const Potential& p, double k1, double k2, const WindowSpec& w, double tol = 1e-12) {
  require(tol >= 1e-13, "quad_overlap: tol must be >= 1e-13");
  require(k1 > 0.0 && k2 > 0.0, "quad_overlap: momenta must be positive");
  validate_window(p, w);
  const auto c1 = coefficients(p, k1), c2 = coefficients(p, k2);
  std::vector<double> breaks = {w.x1};
  auto add = [&](double x) {
    if (x > w.x1 && x < w.x2) breaks.push_back(x);
  };
  if (p.family == Family::SquareWell) add(-0.5 * p.width), add(0.5 * p.width);
  if (p.family == Family::Delta) add(0.0);
  breaks.push_back(w.x2);
  const double quarter = 0.25 * 2.0 * kPi / (k1 + k2);
  quad::AdaptiveOptions opt;
  opt.abs_tol = tol;
  opt.rel_tol = 0.0;
  opt.initial_panels = static_cast<std::size_t>(std::ceil((w.x2 - w.x1) / quarter / (breaks.size() - 1))) + 1;
  opt.max_panels = 8000000;
  auto f = [&](double x) { return std::conj(eval_wavefunction(p, c1, x)) * eval_wavefunction(p, c2, x); };
  return quad::integrate(f, breaks, opt).value;
}

struct CesaroExtraction {
  std::vector<double> lambda_grid;
  std::vector<Complex> raw_overlaps;
  std::vector<double> omegas;       // harmonics removed from the raw data
  Complex constant = 0.0;           // Λ-independent part C
  std::vector<Complex> amplitudes;  // A_j of e^{iω_jΛ}
  Complex averaged = 0.0;           // Δ estimate
  Complex plain_average = 0.0;      // Cesàro mean of the raw overlaps
  Complex plain_estimate = 0.0;     // Δ from uncorrected Cesàro demodulation
  double convergence_estimate = 0.0;
  double cesaro_change = 0.0;       // |plain_estimate(λ₀) − plain_estimate(2λ₀)|
};

namespace detail {

struct Sampling {
  std::vector<double> nodes;
  std::vector<double> weights;  // sum to 1
};

// Composite 16-point Gauss-Legendre on [lo, hi], uniform measure.
inline Sampling uniform_measure(double lo, double hi, std::size_t n_samples) {
  static const quad::Rule base = quad::gauss_legendre(16);
  const std::size_t panels = std::max<std::size_t>(1, (n_samples + 15) / 16);
  Sampling s;
  s.nodes.reserve(panels * 16);
  s.weights.reserve(panels * 16);
  const double h = (hi - lo) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double a = lo + h * static_cast<double>(p);
    for (std::size_t i = 0; i < 16; ++i) {
      s.nodes.push_back(a + 0.5 * h * (base.nodes[i] + 1.0));
      s.weights.push_back(0.5 * h * base.weights[i] / (hi - lo));
    }
  }
  return s;
}

struct HarmonicFit {
  Complex constant;
  std::vector<Complex> amplitudes;
  std::vector<Complex> plain;  // uncorrected projections, constant first
};

// Least squares of values ≈ C + Σ A_j e^{iω_jΛ} under the uniform measure:
// the Cesàro projections onto each basis function, corrected by the Gram matrix.
inline HarmonicFit harmonic_fit(const Sampling& s, const std::vector<Complex>& values, const std::vector<double>& omegas) {
  const std::size_t m = omegas.size() + 1;
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(m, m);
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(m);
  std::vector<Complex> basis(m);
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    basis[0] = 1.0;
    for (std::size_t j = 0; j < omegas.size(); ++j) basis[j + 1] = std::exp(kI * omegas[j] * s.nodes[i]);
    for (std::size_t r = 0; r < m; ++r) {
      b(r) += s.weights[i] * std::conj(basis[r]) * values[i];
      for (std::size_t c = 0; c < m; ++c) G(r, c) += s.weights[i] * std::conj(basis[r]) * basis[c];
    }
  }
  const Eigen::VectorXcd x = G.fullPivLu().solve(b);
  HarmonicFit f;
  f.constant = x(0);
  for (std::size_t j = 1; j < m; ++j) f.amplitudes.push_back(x(j));
  for (std::size_t j = 0; j < m; ++j) f.plain.push_back(b(j));
  return f;
}

inline std::size_t default_samples(double lambda0, double omega_max) {
  return static_cast<std::size_t>(std::ceil(32.0 * omega_max * lambda0 / kPi)) + 64;
}

// Shared driver. overlap(Λ) returns the raw windowed overlap; sign maps the
// finite part C + ΣA onto Δ.
inline CesaroExtraction extract(const std::function<std::vector<Complex>(const std::vector<double>&)>& overlaps,
                                const std::vector<double>& omegas, double lambda0, std::size_t n_lambda, double sign) {
  double omega_max = 0.0, omega_min = std::numeric_limits<double>::infinity();
  for (double w : omegas) omega_max = std::max(omega_max, std::abs(w));
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    omega_min = std::min(omega_min, std::abs(omegas[i]));
    for (std::size_t j = 0; j < i; ++j) omega_min = std::min(omega_min, std::abs(omegas[i] - omegas[j]));
  }
  if (omega_min * lambda0 < 8.0 * kPi)
    throw DomainError("cesaro_delta_extract: momenta too close to degeneracy for this lambda0");
  if (n_lambda == 0) n_lambda = default_samples(lambda0, omega_max);
  require(static_cast<double>(n_lambda) >= 16.0 * omega_max * lambda0 / kPi,
          "cesaro_delta_extract: n_lambda too small to resolve the oscillations");

  auto run = [&](double lo, std::size_t n) {
    const Sampling s = uniform_measure(lo, 2.0 * lo, n);
    auto values = overlaps(s.nodes);
    return std::make_pair(s, std::move(values));
  };
  auto [s0, v0] = run(lambda0, n_lambda);
  auto [s1, v1] = run(2.0 * lambda0, 2 * n_lambda);
  const HarmonicFit f0 = harmonic_fit(s0, v0, omegas);
  const HarmonicFit f1 = harmonic_fit(s1, v1, omegas);

  CesaroExtraction out;
  out.lambda_grid = s0.nodes;
  out.raw_overlaps = v0;
  out.omegas = omegas;
  out.constant = f0.constant;
  out.amplitudes = f0.amplitudes;
  Complex fp = f0.constant;
  for (auto a : f0.amplitudes) fp += a;
  out.averaged = sign * fp;
  out.plain_average = f0.plain[0];
  auto plain_delta = [&](const HarmonicFit& f) {
    Complex t = 0.0;
    for (auto v : f.plain) t += v;
    return sign * t;
  };
  out.plain_estimate = plain_delta(f0);
  out.cesaro_change = std::abs(plain_delta(f0) - plain_delta(f1));
  // Leakage bound of the uncorrected projections: a harmonic at ω_l projected
  // on ω_j over [λ₀, 2λ₀] leaves at most 2|A_l|/(|ω_l − ω_j| λ₀).
  std::vector<double> all = {0.0};
  std::vector<double> mags = {std::abs(f0.constant)};
  for (std::size_t j = 0; j < omegas.size(); ++j) all.push_back(omegas[j]), mags.push_back(std::abs(f0.amplitudes[j]));
  double bound = 0.0;
  for (std::size_t j = 0; j < all.size(); ++j)
    for (std::size_t l = 0; l < all.size(); ++l)
      if (l != j) bound += 2.0 * mags[l] / (std::abs(all[l] - all[j]) * lambda0);
  out.convergence_estimate = bound;
  return out;
}

}  // namespace detail

// Windowed overlaps ⟨φ_{k₂}|φ_{k₁}⟩ on [−Λ, Λ] over Λ ∈ [λ₀, 2λ₀]. Their plain
// Cesàro mean tends to 0 (pure oscillation); the Gram-corrected demodulation
// separates C + Σ A_j, whose negative is Δ(k₁, k₂).
inline CesaroExtraction cesaro_delta_extract(const Potential& p, double k1, double k2, double lambda0,
                                             std::size_t n_lambda = 0) {
  require(k1 > 0.0 && k2 > 0.0, "cesaro_delta_extract: momenta must be positive");
  if (k1 == k2) throw DomainError("cesaro_delta_extract: degenerate momenta");
  const double scale = p.family == Family::SquareWell ? p.width : (p.family == Family::Sech2 ? 1.0 / p.inverse_range : 1.0);
  require(lambda0 >= 10.0 * scale, "cesaro_delta_extract: lambda0 must be much larger than the potential range");
  const std::vector<double> omegas = {k1 - k2, -(k1 - k2), k1 + k2, -(k1 + k2)};
  auto overlaps = [&](const std::vector<double>& lambdas) { return overlap_windows_symmetric(p, k2, k1, lambdas); };
  return detail::extract(overlaps, omegas, lambda0, n_lambda, -1.0);
}

// Sech² Δ by asymptotic subtraction: −∫(φ₂*φ₁ − φ₂,asy*φ₁,asy) over [−X, X],
// the asymptotic forms continued to the origin. The integrand decays like e^{−2μ|x|}.
inline Complex sech2_delta_subtracted(const Potential& p, double k1, double k2, double X = 0.0) {
  require(p.family == Family::Sech2, "sech2_delta_subtracted: potential is not sech2");
  if (k1 == k2) throw DomainError("sech2_delta_subtracted: degenerate momenta");
  if (X <= 0.0) X = 20.0 / p.inverse_range;
  const auto c1 = coefficients(p, k1), c2 = coefficients(p, k2);
  auto asym = [](const ScatteringCoefficients& c, double x) {
    return x < 0.0 ? std::exp(kI * c.k * x) + c.R * std::exp(-kI * c.k * x) : c.T * std::exp(kI * c.k * x);
  };
  auto f = [&](double x) {
    return std::conj(eval_wavefunction(p, c2, x)) * eval_wavefunction(p, c1, x) - std::conj(asym(c2, x)) * asym(c1, x);
  };
  quad::AdaptiveOptions opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-12;
  opt.initial_panels = static_cast<std::size_t>(X * (k1 + k2) / (kPi / 2.0)) + 4;
  return -quad::integrate(f, std::vector<double>{-X, 0.0, X}, opt).value;
}

// Radial potential on r ≥ 0 (m = 1/2): −u″ + V u = k² u.
struct RadialPotential {
  std::function<double(double)> V;
  std::vector<double> breaks;  // discontinuities of V
  double range = 0.0;          // V ≡ 0 (or negligible) beyond this radius
};

inline RadialPotential radial_free() {
  return {[](double) { return 0.0; }, {}, 0.0};
}

inline RadialPotential radial_square_well(double V0, double b) {
  require(b > 0.0, "radial_square_well: radius must be positive");
  return {[V0, b](double r) { return r < b ? V0 : 0.0; }, {b}, b};
}

struct RadialSolution {
  Complex T = 0.0;
  Complex R = 0.0;
  Complex phi0 = 0.0;
  Complex dphi0 = 1.0;
  double fit_residual = 0.0;
};

// s-wave closed form for the radial square well, u(0) = 0, u′(0) = 1.
inline RadialSolution radial_square_well_analytic(double k, double V0, double b) {
  const Complex K = std::sqrt(Complex(k * k - V0, 0.0));
  const Complex s = (K == 0.0) ? Complex(b) : std::sin(K * b) / K;
  const Complex c = std::cos(K * b);
  RadialSolution out;
  out.T = std::exp(-kI * k * b) * (s + c / (kI * k)) / 2.0;
  out.R = std::exp(kI * k * b) * (s - c / (kI * k)) / 2.0;
  out.phi0 = 0.0;
  out.dphi0 = 1.0;
  return out;
}

namespace detail {

using RadialState = std::array<double, 5>;  // u₁, u₁′, u₂, u₂′, ∫u₁u₂

// Integrates both states (and their overlap) from r = 0 with u(0) = 0,
// u′(0) = 1, observing at the sorted radii `times`. Steps never cross a
// breakpoint of V.
inline std::vector<RadialState> radial_integrate(const RadialPotential& V, double k1, double k2,
                                                 const std::vector<double>& times, double tol = 1e-12) {
  namespace ode = boost::numeric::odeint;
  auto rhs = [&](const RadialState& y, RadialState& dy, double r) {
    const double v = V.V(r);
    dy[0] = y[1];
    dy[1] = (v - k1 * k1) * y[0];
    dy[2] = y[3];
    dy[3] = (v - k2 * k2) * y[2];
    dy[4] = y[0] * y[2];
  };
  std::vector<RadialState> out(times.size());
  RadialState y = {0.0, 1.0, 0.0, 1.0, 0.0};
  double r = 0.0;
  std::vector<double> stops = V.breaks;
  std::sort(stops.begin(), stops.end());
  const double h0 = 0.01 / std::max(k1, k2);
  std::size_t ti = 0;
  while (ti < times.size() && times[ti] <= 0.0) out[ti++] = y;
  for (std::size_t si = 0; si <= stops.size() && ti < times.size(); ++si) {
    const double seg_end = si < stops.size() ? stops[si] : times.back();
    if (seg_end <= r) continue;
    std::vector<double> ts = {r};
    std::vector<std::size_t> idx;
    while (ti < times.size() && times[ti] <= seg_end) {
      if (times[ti] > r) {
        ts.push_back(times[ti]);
        idx.push_back(ti);
      } else {
        out[ti] = y;
      }
      ++ti;
    }
    if (ts.back() < seg_end) ts.push_back(seg_end);
    std::size_t obs = 0;
    auto observer = [&](const RadialState& s, double t) {
      if (t == ts.front()) return;
      if (obs < idx.size() && t == times[idx[obs]]) out[idx[obs++]] = s;
    };
    auto stepper = ode::make_dense_output(tol, tol, ode::runge_kutta_dopri5<RadialState>());
    ode::integrate_times(stepper, rhs, y, ts.begin(), ts.end(), h0, observer);
    r = seg_end;
  }
  return out;
}

}  // namespace detail

// Outward integration to r_max, then a least-squares fit of T, R on the tail
// [r_max − L, r_max], L = 8 wavelengths (at least past the potential range).
inline RadialSolution radial_ode_solve(const RadialPotential& V, double k, double r_max, double fit_threshold = 1e-8) {
  require(k > 0.0, "radial_ode_solve: k must be positive");
  require(r_max > V.range, "radial_ode_solve: r_max must lie beyond the potential range");
  const double L = std::min(8.0 * 2.0 * kPi / k, r_max - V.range);
  const std::size_t n = 64;
  std::vector<double> rs(n);
  for (std::size_t i = 0; i < n; ++i) rs[i] = r_max - L + L * static_cast<double>(i) / static_cast<double>(n - 1);
  const auto st = detail::radial_integrate(V, k, k, rs);
  Eigen::MatrixXcd A(n, 2);
  Eigen::VectorXcd b(n);
  for (std::size_t i = 0; i < n; ++i) {
    A(i, 0) = std::exp(kI * k * rs[i]);
    A(i, 1) = std::exp(-kI * k * rs[i]);
    b(i) = st[i][0];
  }
  const Eigen::Vector2cd x = A.colPivHouseholderQr().solve(b);
  RadialSolution out;
  out.T = x(0);
  out.R = x(1);
  out.phi0 = 0.0;
  out.dphi0 = 1.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(b(i)));
  out.fit_residual = (A * x - b).cwiseAbs().maxCoeff() / std::max(scale, 1e-300);
  if (out.fit_residual > fit_threshold)
    throw ConvergenceError("radial_ode_solve: asymptotic fit residual " + std::to_string(out.fit_residual));
  return out;
}

// O(ρ) = ∫₀^ρ u₂*u₁ dr = C + Σ A_j e^{iω_jρ}; the radial Δ is C + Σ A_j.
inline CesaroExtraction radial_cesaro_delta(const RadialPotential& V, double k1, double k2, double lambda0,
                                            std::size_t n_lambda = 0) {
  require(k1 > 0.0 && k2 > 0.0, "radial_cesaro_delta: momenta must be positive");
  if (k1 == k2) throw DomainError("radial_cesaro_delta: degenerate momenta");
  require(lambda0 >= 10.0 * std::max(V.range, 1.0), "radial_cesaro_delta: lambda0 too small");
  const std::vector<double> omegas = {k1 - k2, -(k1 - k2), k1 + k2, -(k1 + k2)};
  auto overlaps = [&](const std::vector<double>& rs) {
    const auto st = detail::radial_integrate(V, k1, k2, rs);
    std::vector<Complex> v(rs.size());
    for (std::size_t i = 0; i < rs.size(); ++i) v[i] = st[i][4];
    return v;
  };
  return detail::extract(overlaps, omegas, lambda0, n_lambda, 1.0);
}

}  // namespace scatterkit::oracle
