#pragma once

#include <array>
#include <cmath>

#include "scatterkit/common.hpp"
#include "scatterkit/quadrature.hpp"

namespace scatterkit {

namespace detail {

inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

inline bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

// Lanczos sum and t for Re z >= 0.5.
inline std::pair<Complex, Complex> lanczos_parts(Complex z) {
  z -= 1.0;
  Complex x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  return {x, z + kLanczosG + 0.5};
}

}  // namespace detail

inline Complex complex_gamma(Complex z) {
  if (detail::is_nonpositive_integer(z)) throw DomainError("complex_gamma: pole at nonpositive integer");
  if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * complex_gamma(1.0 - z));
  auto [x, t] = detail::lanczos_parts(z);
  return std::sqrt(2.0 * kPi) * std::pow(t, z - 0.5) * std::exp(-t) * x;
}

// log Γ(z) modulo 2πi; only meant to be exponentiated after summing.
inline Complex complex_log_gamma(Complex z) {
  if (detail::is_nonpositive_integer(z)) throw DomainError("complex_log_gamma: pole at nonpositive integer");
  if (z.real() < 0.5) return std::log(kPi) - std::log(std::sin(kPi * z)) - complex_log_gamma(1.0 - z);
  auto [x, t] = detail::lanczos_parts(z);
  return 0.5 * std::log(2.0 * kPi) + (z - 0.5) * std::log(t) - t + std::log(x);
}

// 1/Γ(z), entire: exactly zero at the poles of Γ.
inline Complex reciprocal_gamma(Complex z) {
  if (detail::is_nonpositive_integer(z)) return 0.0;
  if (z.real() < 0.5) return std::sin(kPi * z) * complex_gamma(1.0 - z) / kPi;
  return 1.0 / complex_gamma(z);
}

namespace detail {

inline constexpr double kAiC1 = 0.355028053887817239260;  // Ai(0)
inline constexpr double kAiC2 = 0.258819403792806798405;  // -Ai'(0)

inline double airy_series(double x) {
  double f = 1.0, g = x, tf = 1.0, tg = x;
  const double x3 = x * x * x;
  for (int k = 0; k < 400; ++k) {
    tf *= x3 / ((3.0 * k + 2.0) * (3.0 * k + 3.0));
    tg *= x3 / ((3.0 * k + 3.0) * (3.0 * k + 4.0));
    f += tf;
    g += tg;
    if (k > 4 && std::abs(tf) < 1e-18 * std::abs(f) && std::abs(tg) < 1e-18 * std::max(std::abs(g), 1e-300)) break;
  }
  return kAiC1 * f - kAiC2 * g;
}

inline const std::array<double, 40>& airy_u() {
  static const std::array<double, 40> u = [] {
    std::array<double, 40> v{};
    v[0] = 1.0;
    for (int k = 1; k < 40; ++k)
      v[k] = v[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
    return v;
  }();
  return u;
}

inline double airy_asymptotic(double x) {
  const auto& u = airy_u();
  if (x > 0.0) {
    const double z = 2.0 / 3.0 * x * std::sqrt(x);
    double s = 0.0, prev = 0.0, zk = 1.0;
    for (int k = 0; k < 40; ++k) {
      const double t = ((k % 2) ? -1.0 : 1.0) * u[k] / zk;
      if (k > 0 && std::abs(t) > std::abs(prev)) break;
      s += t;
      prev = t;
      zk *= z;
    }
    return std::exp(-z) / (2.0 * std::sqrt(kPi) * std::pow(x, 0.25)) * s;
  }
  const double y = -x;
  const double z = 2.0 / 3.0 * y * std::sqrt(y);
  double p = 0.0, q = 0.0, pp = 0.0, qq = 0.0;
  for (int k = 0; k < 40; k += 2) {
    const double t = (((k / 2) % 2) ? -1.0 : 1.0) * u[k] / std::pow(z, k);
    if (k > 0 && std::abs(t) > std::abs(pp)) break;
    p += t;
    pp = t;
  }
  for (int k = 1; k < 40; k += 2) {
    const double t = ((((k - 1) / 2) % 2) ? -1.0 : 1.0) * u[k] / std::pow(z, k);
    if (k > 1 && std::abs(t) > std::abs(qq)) break;
    q += t;
    qq = t;
  }
  const double th = z + kPi / 4.0;
  return (std::sin(th) * p - std::cos(th) * q) / (std::sqrt(kPi) * std::pow(y, 0.25));
}

}  // namespace detail

// Ai(ξ): Maclaurin series for |ξ| < 6, asymptotic expansions beyond.
inline double airy_ai(double xi) {
  require(std::isfinite(xi), "airy_ai: argument must be finite");
  if (std::abs(xi) < 6.0) return detail::airy_series(xi);
  if (xi > 200.0) return 0.0;
  return detail::airy_asymptotic(xi);
}

// (1/π) Re ∫₀^∞ exp(i(u³/3 + ξu)) du with u = t e^{iπ/6}, which turns the
// oscillation into exp(−t³/3 − ξt/2 + i√3ξt/2). A cross-check for airy_ai.
inline double airy_ai_integral(double xi) {
  const Complex rot = std::exp(kI * (kPi / 6.0));
  const double upper = 6.0 + 2.0 * std::sqrt(std::abs(xi));
  quad::AdaptiveOptions opt;
  opt.abs_tol = 1e-15;
  opt.rel_tol = 1e-13;
  opt.initial_panels = static_cast<std::size_t>(upper * (1.0 + std::abs(xi))) + 8;
  auto f = [&](double t) { return std::real(rot * std::exp(-t * t * t / 3.0 + kI * xi * rot * t)); };
  return quad::integrate(f, 0.0, upper, opt).value / kPi;
}

struct LinearPotentialState {
  double E = 0.0;
  double m = 1.0;
  double g = 1.0;
  double c = 0.0;
  double xi1 = 0.0;
};

// c = (1/(2m²g))^{1/3}, ξ₁ = E/(mgc): with z = cξ the eigenvalue equation
// becomes φ'' = (ξ − ξ₁)φ.
inline LinearPotentialState make_linear_state(double E, double m = 1.0, double g = 1.0) {
  require(m > 0.0 && g > 0.0, "make_linear_state: m and g must be positive");
  LinearPotentialState s;
  s.E = E;
  s.m = m;
  s.g = g;
  s.c = std::cbrt(1.0 / (2.0 * m * m * g));
  s.xi1 = E / (m * g * s.c);
  return s;
}

inline double linear_state_eval(const LinearPotentialState& s, double z) { return airy_ai(z / s.c - s.xi1); }

// ∫ Ai(x+s) G_σ(s) ds = exp(σ²x/2 + σ⁶/12) Ai(x + σ⁴/4).
inline double airy_gaussian_smeared(double x, double sigma) {
  const double s2 = sigma * sigma;
  return std::exp(0.5 * s2 * x + s2 * s2 * s2 / 12.0) * airy_ai(x + 0.25 * s2 * s2);
}

struct SmearedAiryOverlap {
  double truncated = 0.0;   // ∫_{−T}^{T}
  double tail = 0.0;        // ∫_{−∞}^{−T}
  double corrected = 0.0;   // truncated + tail
  double target = 0.0;      // G_σ(x − y)
  double cauchy_change = 0.0;  // |I(2T) − I(T)| of the corrected values
};

namespace detail {

inline double smeared_airy_integral(double x, double y, double lo, double hi, double sigma) {
  quad::AdaptiveOptions opt;
  opt.abs_tol = 1e-12;
  opt.rel_tol = 1e-11;
  // Local wavenumber at the far end is sqrt(|lo| + |x|); keep panels under a quarter period.
  const double kmax = std::sqrt(std::abs(lo) + std::abs(x) + std::abs(y) + 1.0);
  opt.initial_panels = static_cast<std::size_t>((hi - lo) * kmax / (kPi / 2.0)) + 8;
  opt.max_panels = 2000000;
  auto f = [&](double t) { return airy_ai(t + x) * airy_gaussian_smeared(t + y, sigma); };
  return quad::integrate(f, lo, hi, opt).value;
}

// The smeared factor carries e^{σ²t/2}, so the left tail is cut where that
// damping falls below 1e-16.
inline double smeared_airy_tail(double x, double y, double T, double sigma) {
  const double depth = 2.0 * 37.0 / (sigma * sigma);
  return smeared_airy_integral(x, y, -T - depth, -T, sigma);
}

}  // namespace detail

inline double gaussian_density(double d, double sigma) {
  return std::exp(-d * d / (2.0 * sigma * sigma)) / (sigma * std::sqrt(2.0 * kPi));
}

// ∬ dt dy′ Ai(t+x) Ai(t+y′) G_σ(y′−y) over t ∈ [−T, T]. The y′ smearing is
// done in closed form. Throws if doubling T moves the corrected value by
// more than cauchy_tol.
inline SmearedAiryOverlap airy_overlap_smeared(double x, double y, double half_window, double sigma,
                                               double cauchy_tol = 1e-2) {
  require(half_window >= 20.0, "airy_overlap_smeared: half_window must be >= 20");
  require(sigma > 0.0, "airy_overlap_smeared: sigma must be positive");
  SmearedAiryOverlap r;
  r.truncated = detail::smeared_airy_integral(x, y, -half_window, half_window, sigma);
  r.tail = detail::smeared_airy_tail(x, y, half_window, sigma);
  r.corrected = r.truncated + r.tail;
  r.target = gaussian_density(x - y, sigma);
  const double doubled = detail::smeared_airy_integral(x, y, -2.0 * half_window, 2.0 * half_window, sigma) +
                         detail::smeared_airy_tail(x, y, 2.0 * half_window, sigma);
  r.cauchy_change = std::abs(doubled - r.corrected);
  if (r.cauchy_change > cauchy_tol)
    throw ConvergenceError("airy_overlap_smeared: result not Cauchy in T (change " +
                           std::to_string(r.cauchy_change) + ")");
  return r;
}

namespace detail {

inline Complex hyp2f1_series(Complex a, Complex b, Complex c, double z) {
  Complex term = 1.0, sum = 1.0;
  for (int n = 0; n < 5000; ++n) {
    term *= (a + static_cast<double>(n)) * (b + static_cast<double>(n)) / ((c + static_cast<double>(n)) * (n + 1.0)) * z;
    sum += term;
    if (n > 2 && std::abs(term) < 1e-17 * std::abs(sum)) return sum;
    if (term == 0.0) return sum;
  }
  throw ConvergenceError("hyp2f1: series did not converge");
}

}  // namespace detail

// Gauss 2F1(a, b; c; z) for z in [0, 1), with w = 1 − z passed separately so
// it keeps full relative precision near z = 1. Direct series for z <= 1/2,
// otherwise the 1 − z connection formula (needs c − a − b non-integer).
inline Complex hyp2f1(Complex a, Complex b, Complex c, double z, double w) {
  require(z >= 0.0 && w > 0.0, "hyp2f1: z must lie in [0, 1)");
  if (z <= 0.5) return detail::hyp2f1_series(a, b, c, z);
  const Complex s = c - a - b;
  if (s.imag() == 0.0 && s.real() == std::round(s.real()))
    throw DomainError("hyp2f1: c - a - b is an integer, connection formula degenerate");
  const Complex g1 = complex_gamma(c) * complex_gamma(s) * reciprocal_gamma(c - a) * reciprocal_gamma(c - b);
  const Complex g2 = complex_gamma(c) * complex_gamma(-s) * reciprocal_gamma(a) * reciprocal_gamma(b);
  Complex out = 0.0;
  if (g1 != 0.0) out += g1 * detail::hyp2f1_series(a, b, 1.0 - s, w);
  if (g2 != 0.0) out += g2 * std::exp(s * std::log(w)) * detail::hyp2f1_series(c - a, c - b, 1.0 + s, w);
  return out;
}

inline Complex hyp2f1(Complex a, Complex b, Complex c, double z) {
  require(z >= 0.0 && z < 1.0, "hyp2f1: z must lie in [0, 1)");
  return hyp2f1(a, b, c, z, 1.0 - z);
}

}  // namespace scatterkit
