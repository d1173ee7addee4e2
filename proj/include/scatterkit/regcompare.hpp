#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "scatterkit/analytic_states.hpp"
#include "scatterkit/common.hpp"
#include "scatterkit/overlap_engine.hpp"
#include "scatterkit/quadrature.hpp"

namespace scatterkit::reg {

// ∫_{x1}^{x2} e^{i(k₁−k₂)x} dx; x2 − x1 at k₁ = k₂.
inline Complex I1_closed(double x1, double x2, double k1, double k2) { return exp_integral(k1 - k2, x1, x2); }

// ∫_{x1}^{x2} e^{i(k₁−k₂+2iε)x} dx; x2 may be +∞.
inline Complex I2_closed(double x1, double x2, double k1, double k2, double eps) {
  require(eps > 0.0, "I2_closed: eps must be positive");
  const Complex q(k1 - k2, 2.0 * eps);
  if (std::isinf(x2)) return kI * std::exp(kI * q * x1) / q;
  return exp_integral(q, x1, x2);
}

// |I2(0, ∞)|² = 1/((k₁−k₂)² + 4ε²).
inline double I2_lorentzian(double dk, double eps) { return std::norm(I2_closed(0.0, std::numeric_limits<double>::infinity(), dk, 0.0, eps)); }

// ∫ d(k₁−k₂) |I2(0, ∞)|² by quadrature after q = 2ε tan θ; closed form π/(2ε).
inline double I2_lorentzian_integral(double eps) {
  auto f = [eps](double th) {
    const double q = 2.0 * eps * std::tan(th);
    const double c = std::cos(th);
    return I2_lorentzian(q, eps) * 2.0 * eps / (c * c);
  };
  quad::AdaptiveOptions opt;
  opt.abs_tol = 0.0;
  opt.rel_tol = 1e-13;
  return quad::integrate(f, -0.5 * kPi, 0.5 * kPi, opt).value;
}

struct NormalizationReport {
  double oracle = 0.0;        // ∫ dq |I1(L, Λ; q)|² by quadrature
  double dirichlet = 0.0;     // 2π(Λ − L)
  double stated_value = 0.0;   // (Λ − L)π as stated
  double ratio_to_stated = 0.0;
};

// ∫ dq 4 sin²(q ℓ/2)/q², ℓ = Λ − L: adaptive quadrature on [−Q, Q] plus the
// tail 2∫_Q^∞ (2 − 2cos qℓ)/q² = 4/Q + 4 sin(Qℓ)/(ℓQ²) + O(Q⁻³).
inline NormalizationReport I1_normalization(double L, double Lambda) {
  require(Lambda > L, "I1_normalization: need Lambda > L");
  const double ell = Lambda - L;
  const double Q = 2000.0 / ell * 2.0 * kPi;
  auto f = [&](double q) { return std::norm(I1_closed(L, Lambda, q, 0.0)); };
  quad::AdaptiveOptions opt;
  opt.abs_tol = 1e-12 * ell;
  opt.rel_tol = 1e-13;
  opt.initial_panels = static_cast<std::size_t>(Q * ell / kPi) + 8;
  opt.max_panels = 4000000;
  const double core = quad::integrate(f, -Q, Q, opt).value;
  const double tail = 2.0 * (2.0 / Q + 2.0 * std::sin(Q * ell) / (ell * Q * Q));
  NormalizationReport r;
  r.oracle = core + tail;
  r.dirichlet = 2.0 * kPi * ell;
  r.stated_value = kPi * ell;
  r.ratio_to_stated = r.oracle / r.stated_value;
  return r;
}

// Smeared checks against f(q) = exp(−q²/(2σ²)); target 2π f(0) = 2π.
// Finite window [−Λ, Λ]: ∫ f(q) 2 sin(qΛ)/q dq.
inline double smeared_I1(double Lambda, double sigma) {
  auto g = [&](double q) { return std::exp(-q * q / (2.0 * sigma * sigma)) * std::real(I1_closed(-Lambda, Lambda, q, 0.0)); };
  quad::AdaptiveOptions opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-13;
  const double Q = 12.0 * sigma;
  opt.initial_panels = static_cast<std::size_t>(Q * Lambda / kPi) + 8;
  return quad::integrate(g, -Q, Q, opt).value;
}

// Damped full line e^{−2ε|x|}: ∫ f(q) 4ε/(q² + 4ε²) dq, again via q = 2ε tan θ.
inline double smeared_I2(double eps, double sigma) {
  auto g = [&](double th) {
    const double q = 2.0 * eps * std::tan(th);
    return std::exp(-q * q / (2.0 * sigma * sigma)) * 2.0;
  };
  quad::AdaptiveOptions opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-13;
  return quad::integrate(g, -0.5 * kPi, 0.5 * kPi, opt).value;
}

struct RegComparisonReport {
  double k1 = 0.0, k2 = 0.0, eps = 0.0;
  Complex I1 = 0.0;  // window [0, Λ]
  Complex I2 = 0.0;  // [0, ∞) with damping ε
  double lambda = 0.0;
  double smeared_I1 = 0.0, smeared_I2 = 0.0, smeared_target = 0.0;
  bool leading_delta_match = false;
  // Finite part of I1 with the far-endpoint phase set to 1 (zero) minus the
  // ε → 0 limit of I2 (i/(k₁−k₂)).
  Complex next_order_difference = 0.0;
  // Same, with the Cesàro mean of I1 over Λ ∈ [Λ, 2Λ] as its finite part.
  Complex cesaro_difference = 0.0;
  Complex boundary_residual = 0.0;
  NormalizationReport normalization;
  double lorentzian_integral = 0.0, lorentzian_closed = 0.0;
};

// Regularized-state boundary identity residual
// 2(E₁* − E₂)∫ψ_r1*ψ_r2 dx + [ψ_r1′*ψ_r2 − ψ_r1*ψ_r2′]_{x1}^{x2}.
// Free: ψ_r = e^{i(k+iε)x}, E = (k+iε)²/2. SquareWell: left-region
// ψ_r = (e^{ikx} + R e^{−ikx}) e^{εx} against E = k²/2; the window must lie
// left of the well.
inline Complex boundary_reduction_residual(const Potential& p, double k1, double k2, double eps, const WindowSpec& w) {
  require(eps > 0.0, "boundary_reduction_residual: eps must be positive");
  require(w.x1 < w.x2, "boundary_reduction_residual: need x1 < x2");
  struct Wave {
    std::vector<std::pair<Complex, Complex>> terms;  // amp, q: amp e^{iqx}
    Complex E;
    Complex value(double x) const {
      Complex s = 0.0;
      for (auto& [a, q] : terms) s += a * std::exp(kI * q * x);
      return s;
    }
    Complex deriv(double x) const {
      Complex s = 0.0;
      for (auto& [a, q] : terms) s += kI * q * a * std::exp(kI * q * x);
      return s;
    }
  };
  auto make = [&](double k) -> Wave {
    if (p.family == Family::Free) {
      const Complex kk(k, eps);
      return {{{1.0, kk}}, 0.5 * kk * kk};
    }
    if (p.family == Family::SquareWell) {
      require(w.x2 <= -0.5 * p.width, "boundary_reduction_residual: window must lie left of the well");
      const auto c = square_well_coefficients(k, p);
      // e^{εx} = e^{i(−iε)x}
      return {{{1.0, Complex(k, -eps)}, {c.R, Complex(-k, -eps)}}, 0.5 * k * k};
    }
    throw InvalidArgument("boundary_reduction_residual: family must be free or squarewell");
  };
  const Wave a = make(k1), b = make(k2);
  Complex integral = 0.0;
  for (auto& [a1, q1] : a.terms)
    for (auto& [a2, q2] : b.terms) integral += std::conj(a1) * a2 * exp_integral(q2 - std::conj(q1), w.x1, w.x2);
  auto J = [&](double x) { return std::conj(a.deriv(x)) * b.value(x) - std::conj(a.value(x)) * b.deriv(x); };
  return 2.0 * (std::conj(a.E) - b.E) * integral + (J(w.x2) - J(w.x1));
}

struct LinearFit {
  double slope = 0.0, intercept = 0.0, r2 = 0.0;
};

inline LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  LinearFit f;
  f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / n;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - f.intercept - f.slope * x[i];
    ss_res += r * r;
  }
  const double ss_tot = syy - sy * sy / n;
  f.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

struct ResidualScaling {
  std::vector<double> eps;
  std::vector<double> magnitude;
  LinearFit fit;
};

inline ResidualScaling residual_scaling(const Potential& p, double k1, double k2, const WindowSpec& w,
                                        const std::vector<double>& eps_values) {
  ResidualScaling s;
  s.eps = eps_values;
  for (double e : eps_values) s.magnitude.push_back(std::abs(boundary_reduction_residual(p, k1, k2, e, w)));
  s.fit = linear_fit(s.eps, s.magnitude);
  return s;
}

inline RegComparisonReport compare(const Potential& p, double k1, double k2, double eps, double lambda,
                                   double sigma = 1.0, const WindowSpec& residual_window = {-40.0, -10.0}) {
  require(k1 != k2, "regcompare: momenta must differ");
  RegComparisonReport r;
  r.k1 = k1;
  r.k2 = k2;
  r.eps = eps;
  r.lambda = lambda;
  r.I1 = I1_closed(0.0, lambda, k1, k2);
  r.I2 = I2_closed(0.0, std::numeric_limits<double>::infinity(), k1, k2, eps);
  // Λ → ∞ and ε → 0 sequences: Λ·2ʲ and ε·10⁻ʲ, j = 0..3; the last members
  // must sit within 1e−4 of 2π f(0) with non-increasing distance along the way.
  r.smeared_target = 2.0 * kPi;
  bool monotone = true;
  double prev1 = 1e300, prev2 = 1e300;
  for (int j = 0; j < 4; ++j) {
    r.smeared_I1 = smeared_I1(lambda * std::ldexp(1.0, j), sigma);
    r.smeared_I2 = smeared_I2(eps * std::pow(10.0, -j), sigma);
    const double d1 = std::abs(r.smeared_I1 - r.smeared_target), d2 = std::abs(r.smeared_I2 - r.smeared_target);
    monotone = monotone && d1 <= prev1 + 1e-12 && d2 <= prev2 + 1e-12;
    prev1 = d1;
    prev2 = d2;
  }
  r.leading_delta_match = monotone && prev1 <= 1e-4 && prev2 <= 1e-4;
  const double q = k1 - k2;
  const Complex i2_limit = kI / q;
  r.next_order_difference = 0.0 - i2_limit;
  // Cesàro mean of (e^{iqΛ'} − 1)/(iq) over Λ' ∈ [Λ, 2Λ].
  const Complex osc = (std::exp(2.0 * kI * q * lambda) - std::exp(kI * q * lambda)) / (kI * q * lambda);
  const Complex cesaro_i1 = (osc - 1.0) / (kI * q);
  r.cesaro_difference = cesaro_i1 - i2_limit;
  r.boundary_residual = boundary_reduction_residual(p, k1, k2, eps, residual_window);
  r.normalization = I1_normalization(0.0, lambda);
  r.lorentzian_integral = I2_lorentzian_integral(eps);
  r.lorentzian_closed = kPi / (2.0 * eps);
  return r;
}

}  // namespace scatterkit::reg
