#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "scatterkit/analytic_states.hpp"
#include "scatterkit/common.hpp"
#include "scatterkit/potentials.hpp"
#include "scatterkit/quadrature.hpp"

namespace scatterkit {

enum class Method { ClosedForm, BoundaryReduced, Regularized, Oracle };

inline std::string method_name(Method m) {
  switch (m) {
    case Method::ClosedForm: return "closed-form";
    case Method::BoundaryReduced: return "boundary-reduced";
    case Method::Regularized: return "regularized";
    case Method::Oracle: return "oracle";
  }
  return "unknown";
}

struct OverlapDecomposition {
  Complex delta_km_coeff = 0.0;  // of 2πδ(k₁−k₂)
  Complex delta_kp_coeff = 0.0;  // of πδ(k₁+k₂)
  Complex finite_remainder = 0.0;
  Method method = Method::ClosedForm;
  // Regularized only: the ε-dependent integral at the requested ε and the
  // three-point Richardson value from ε ∈ {1e-2, 1e-3, 1e-4}.
  Complex at_eps = 0.0;
  Complex richardson = 0.0;
};

struct WindowSpec {
  double x1 = -1.0;
  double x2 = 1.0;

  static WindowSpec symmetric(double lambda) { return {-lambda, lambda}; }
  static WindowSpec from_origin(double x0, double L) { return {x0, x0 + L}; }
};

inline void validate_window(const Potential& p, const WindowSpec& w) {
  require(std::isfinite(w.x1) && std::isfinite(w.x2) && w.x1 < w.x2, "window: need finite x1 < x2");
  if (p.family == Family::SquareWell)
    require(w.x1 < -0.5 * p.width && w.x2 > 0.5 * p.width, "window: must bracket the square well");
}

namespace detail {

struct Term {
  Complex amp;
  Complex q;  // amp · e^{iqx}
};

struct Segment {
  double lo, hi;
  std::vector<Term> terms;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline std::vector<Segment> segments(const Potential& p, const ScatteringCoefficients& c) {
  const double k = c.k;
  switch (p.family) {
    case Family::Free: return {{-kInf, kInf, {{1.0, k}}}};
    case Family::Delta: return {{-kInf, 0.0, {{1.0, k}, {c.R, -k}}}, {0.0, kInf, {{c.T, k}}}};
    case Family::SquareWell: {
      const double h = 0.5 * p.width;
      return {{-kInf, -h, {{1.0, k}, {c.R, -k}}},
              {-h, h, {{c.A_plus, c.k_in}, {c.A_minus, -c.k_in}}},
              {h, kInf, {{c.T, k}}}};
    }
    default: break;
  }
  throw UnsupportedOperation("piecewise-exponential form not available for " + family_name(p.family));
}

// How semi-infinite pieces are closed.
enum class Tail {
  Abel,         // exact e^{−ε|x|} weight
  AbelLimit,    // ε → 0 with the δ parts removed: ∫_X^∞ e^{iwx} → −e^{iwX}/(iw)
  OriginPhase,  // oscillation at the far endpoint replaced by its value at x = 0
};

inline Complex half_line(Complex W, double X, bool to_plus_inf, Tail mode) {
  if (std::abs(W) == 0.0) throw DomainError("overlap: degenerate momenta on a half line");
  const Complex at_X = std::exp(kI * W * X) / (kI * W);
  const Complex at_inf = (mode == Tail::OriginPhase) ? 1.0 / (kI * W) : 0.0;
  return to_plus_inf ? at_inf - at_X : at_X - at_inf;
}

// ∫ φ₁* φ₂ over [x1, x2] (either endpoint may be ±∞), optional e^{−ε|x|}.
inline Complex piecewise_overlap(const std::vector<Segment>& s1, const std::vector<Segment>& s2, double x1, double x2,
                                 double eps, Tail mode) {
  Complex total = 0.0;
  for (std::size_t n = 0; n < s1.size(); ++n) {
    const auto& a = s1[n];
    const auto& b = s2[n];
    for (int side = 0; side < 2; ++side) {
      double lo = std::max(a.lo, x1), hi = std::min(a.hi, x2);
      // Split at 0 so the damping exponent is linear on each part.
      if (side == 0) hi = std::min(hi, 0.0);
      else lo = std::max(lo, 0.0);
      if (!(hi > lo)) continue;
      const Complex damp = (side == 0) ? Complex(0.0, -eps) : Complex(0.0, eps);
      for (const auto& t1 : a.terms)
        for (const auto& t2 : b.terms) {
          const Complex coef = std::conj(t1.amp) * t2.amp;
          if (coef == 0.0) continue;
          const Complex W = t2.q - std::conj(t1.q) + damp;
          Complex v;
          if (std::isinf(lo))
            v = half_line(W, hi, false, mode);
          else if (std::isinf(hi))
            v = half_line(W, lo, true, mode);
          else
            v = exp_integral(W, lo, hi);
          total += coef * v;
        }
    }
  }
  return total;
}

}  // namespace detail

namespace detail {

// Sech² states equal their asymptotic plane waves beyond |μx| = 30 (see
// eval_wavefunction); only the core [−L, L] needs quadrature.
struct Sech2Window {
  double L;
  std::vector<Segment> s1, s2;
  ScatteringCoefficients c1, c2;
};

inline Sech2Window sech2_window(const Potential& p, double k1, double k2) {
  Sech2Window w;
  w.L = 30.0 / p.inverse_range;
  w.c1 = coefficients(p, k1);
  w.c2 = coefficients(p, k2);
  w.s1 = {{-kInf, -w.L, {{1.0, k1}, {w.c1.R, -k1}}}, {w.L, kInf, {{w.c1.T, k1}}}};
  w.s2 = {{-kInf, -w.L, {{1.0, k2}, {w.c2.R, -k2}}}, {w.L, kInf, {{w.c2.T, k2}}}};
  return w;
}

inline Complex sech2_core(const Potential& p, const Sech2Window& sw, double lo, double hi) {
  lo = std::max(lo, -sw.L);
  hi = std::min(hi, sw.L);
  if (!(hi > lo)) return 0.0;
  quad::AdaptiveOptions opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-13;
  opt.initial_panels = static_cast<std::size_t>((hi - lo) * (sw.c1.k + sw.c2.k) / (kPi / 2.0)) + 4;
  opt.max_panels = 4000000;
  auto f = [&](double x) { return std::conj(eval_wavefunction(p, sw.c1, x)) * eval_wavefunction(p, sw.c2, x); };
  return quad::integrate(f, lo, hi, opt).value;
}

}  // namespace detail

// ∫_{x1}^{x2} φ*_{k₁} φ_{k₂} dx. Exact per-segment antiderivatives for the
// piecewise-exponential families, adaptive quadrature for the sech² core.
inline Complex overlap_window(const Potential& p, double k1, double k2, const WindowSpec& w) {
  require(k1 > 0.0 && k2 > 0.0, "overlap_window: momenta must be positive");
  validate_window(p, w);
  if (p.family == Family::Sech2) {
    const auto sw = detail::sech2_window(p, k1, k2);
    return detail::piecewise_overlap(sw.s1, sw.s2, w.x1, w.x2, 0.0, detail::Tail::Abel) +
           detail::sech2_core(p, sw, w.x1, w.x2);
  }
  const auto c1 = coefficients(p, k1), c2 = coefficients(p, k2);
  return detail::piecewise_overlap(detail::segments(p, c1), detail::segments(p, c2), w.x1, w.x2, 0.0,
                                   detail::Tail::Abel);
}

// Symmetric windows [−Λ, Λ] for many Λ, sharing the sech² core integral.
inline std::vector<Complex> overlap_windows_symmetric(const Potential& p, double k1, double k2,
                                                      const std::vector<double>& lambdas) {
  std::vector<Complex> out(lambdas.size());
  if (p.family == Family::Sech2) {
    const auto sw = detail::sech2_window(p, k1, k2);
    const Complex core = detail::sech2_core(p, sw, -sw.L, sw.L);
    parallel_for(lambdas.size(), [&](std::size_t i) {
      const double lam = lambdas[i];
      out[i] = lam >= sw.L ? core + detail::piecewise_overlap(sw.s1, sw.s2, -lam, lam, 0.0, detail::Tail::Abel)
                           : overlap_window(p, k1, k2, WindowSpec::symmetric(lam));
    });
    return out;
  }
  const auto c1 = coefficients(p, k1), c2 = coefficients(p, k2);
  const auto s1 = detail::segments(p, c1), s2 = detail::segments(p, c2);
  parallel_for(lambdas.size(), [&](std::size_t i) {
    validate_window(p, WindowSpec::symmetric(lambdas[i]));
    out[i] = detail::piecewise_overlap(s1, s2, -lambdas[i], lambdas[i], 0.0, detail::Tail::Abel);
  });
  return out;
}

// Finite part of ∫_{−∞}^{∞} φ*_{k₁}φ_{k₂}: on the window [−Λ, Λ] the integral is
// a sum of oscillations A_j e^{iω_jΛ}; this returns Σ A_j.
inline Complex overlap_finite_part(const Potential& p, double k1, double k2) {
  require(k1 > 0.0 && k2 > 0.0, "overlap_finite_part: momenta must be positive");
  if (k1 == k2) throw DomainError("overlap_finite_part: degenerate momenta");
  const auto c1 = coefficients(p, k1), c2 = coefficients(p, k2);
  return detail::piecewise_overlap(detail::segments(p, c1), detail::segments(p, c2), -detail::kInf, detail::kInf,
                                   0.0, detail::Tail::OriginPhase);
}

// (φ′_{k₁})*φ_{k₂} − φ*_{k₁}φ′_{k₂}, evaluated at x2 minus at x1.
inline Complex boundary_current_J(const Potential& p, double k1, double k2, const WindowSpec& w) {
  require(k1 > 0.0 && k2 > 0.0, "boundary_current_J: momenta must be positive");
  validate_window(p, w);
  const auto c1 = coefficients(p, k1), c2 = coefficients(p, k2);
  auto J = [&](double x) {
    const auto s1 = detail::state(p, c1, x);
    const auto s2 = detail::state(p, c2, x);
    return std::conj(s1.deriv) * s2.value - std::conj(s1.value) * s2.deriv;
  };
  if (k1 == k2) return 0.0;
  return J(w.x2) - J(w.x1);
}

// d/dx J = (k₂² − k₁²) φ₁*φ₂, hence overlap = −[J]/(2m(E₁ − E₂)).
inline Complex overlap_from_boundary(const Potential& p, double k1, double k2, const WindowSpec& w) {
  if (k1 == k2 || k1 == -k2) throw DomainError("overlap_from_boundary: degenerate energies");
  return -boundary_current_J(p, k1, k2, w) / (k1 * k1 - k2 * k2);
}

namespace detail {

inline Complex abel_integral(const std::vector<Segment>& s1, const std::vector<Segment>& s2, double eps) {
  return piecewise_overlap(s1, s2, -kInf, kInf, eps, Tail::Abel);
}

// Quadratic Neville extrapolation to ε = 0.
inline Complex richardson3(const std::array<double, 3>& e, const std::array<Complex, 3>& v) {
  Complex p01 = (v[0] * e[1] - v[1] * e[0]) / (e[1] - e[0]);
  Complex p12 = (v[1] * e[2] - v[2] * e[1]) / (e[2] - e[1]);
  return (p01 * e[2] - p12 * e[0]) / (e[2] - e[0]);
}

}  // namespace detail

// ∫ φ*_{k₁}φ_{k₂} e^{−ε|x|} dx split into πδ/P parts. The finite remainder is
// the exact ε → 0 limit of the P parts; the Richardson value over
// ε ∈ {1e-2, 1e-3, 1e-4} is kept as a cross-check.
inline OverlapDecomposition regularized_overlap(const Potential& p, double k1, double k2, double eps) {
  require(eps > 0.0, "regularized_overlap: eps must be positive");
  require(k1 > 0.0 && k2 > 0.0, "regularized_overlap: momenta must be positive");
  require(p.family == Family::Free || p.family == Family::Delta || p.family == Family::SquareWell,
          "regularized_overlap: family must be free, delta or squarewell");
  const auto c1 = coefficients(p, k1), c2 = coefficients(p, k2);
  const auto s1 = detail::segments(p, c1), s2 = detail::segments(p, c2);
  OverlapDecomposition d;
  d.method = Method::Regularized;
  d.delta_km_coeff = 0.5 * (1.0 + std::conj(c1.R) * c2.R + std::conj(c1.T) * c2.T);
  d.delta_kp_coeff = std::conj(c1.R) + c2.R;
  if (k1 == k2) {
    d.at_eps = detail::abel_integral(s1, s2, eps);
    return d;
  }
  d.finite_remainder = detail::piecewise_overlap(s1, s2, -detail::kInf, detail::kInf, 0.0, detail::Tail::AbelLimit);
  d.at_eps = detail::abel_integral(s1, s2, eps);
  const std::array<double, 3> es = {1e-2, 1e-3, 1e-4};
  d.richardson = detail::richardson3(
      es, {detail::abel_integral(s1, s2, es[0]), detail::abel_integral(s1, s2, es[1]),
           detail::abel_integral(s1, s2, es[2])});
  return d;
}

// (e^{i dk (L+x₀)} − e^{i dk x₀})/(i dk), L at dk = 0.
inline Complex window_kernel(double dk, double x0, double L) {
  require(L > 0.0, "window_kernel: L must be positive");
  return exp_integral(dk, x0, x0 + L);
}

// Free superposed waves e^{ikx} + R e^{−ikx} with arbitrary R.
struct SuperposedWave {
  double k;
  Complex R;

  Complex value(double x) const { return std::exp(kI * k * x) + R * std::exp(-kI * k * x); }
  Complex deriv(double x) const { return kI * k * (std::exp(kI * k * x) - R * std::exp(-kI * k * x)); }
};

inline Complex superposed_overlap_direct(const SuperposedWave& f, const SuperposedWave& g, const WindowSpec& w) {
  const Complex a1[2] = {1.0, f.R}, a2[2] = {1.0, g.R};
  const double q1[2] = {f.k, -f.k}, q2[2] = {g.k, -g.k};
  Complex total = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) total += std::conj(a1[i]) * a2[j] * exp_integral(q2[j] - q1[i], w.x1, w.x2);
  return total;
}

inline Complex superposed_overlap_boundary(const SuperposedWave& f, const SuperposedWave& g, const WindowSpec& w) {
  if (f.k == g.k || f.k == -g.k) throw DomainError("superposed_overlap_boundary: degenerate energies");
  auto J = [&](double x) { return std::conj(f.deriv(x)) * g.value(x) - std::conj(f.value(x)) * g.deriv(x); };
  return -(J(w.x2) - J(w.x1)) / (f.k * f.k - g.k * g.k);
}

}  // namespace scatterkit
