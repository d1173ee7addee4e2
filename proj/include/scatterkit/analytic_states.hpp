#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "scatterkit/common.hpp"
#include "scatterkit/potentials.hpp"
#include "scatterkit/special_functions.hpp"

namespace scatterkit {

// Printed: the closed forms exactly as published (A± carry a typo).
// Resolved: the forms that satisfy the matching conditions.
enum class Convention { Resolved, Printed };

struct ScatteringCoefficients {
  double k = 0.0;
  Complex k_in = 0.0;
  Complex R = 0.0;
  Complex T = 1.0;
  Complex A_plus = 0.0;
  Complex A_minus = 0.0;
  Complex D = 0.0;
  Complex nu = 0.0;      // sech² only
  double condition = 0;  // matching-system solve only
};

struct MatchingResidual {
  Complex value_jump_left = 0.0;
  Complex deriv_jump_left = 0.0;
  Complex value_jump_right = 0.0;
  Complex deriv_jump_right = 0.0;

  double max_abs() const {
    return std::max({std::abs(value_jump_left), std::abs(deriv_jump_left), std::abs(value_jump_right),
                     std::abs(deriv_jump_right)});
  }
};

inline Complex inside_wavenumber(double k, double V0) {
  require(k > 0.0, "inside_wavenumber: k must be positive");
  return std::sqrt(Complex(k * k - 2.0 * V0, 0.0));
}

inline ScatteringCoefficients free_coefficients(double k) {
  require(k > 0.0, "free_coefficients: k must be positive");
  ScatteringCoefficients c;
  c.k = k;
  c.k_in = k;
  c.A_plus = 1.0;
  return c;
}

inline ScatteringCoefficients square_well_coefficients(double k, const Potential& p,
                                                       Convention conv = Convention::Resolved) {
  require(k > 0.0, "square_well_coefficients: k must be positive");
  require(p.family == Family::SquareWell, "square_well_coefficients: potential is not a square well");
  const double a = p.width;
  const Complex kt = inside_wavenumber(k, p.strength);
  if (kt == 0.0) throw DomainError("square_well_coefficients: interior wavenumber is zero (E = V0)");
  const Complex s = std::sin(kt * a), c = std::cos(kt * a);
  ScatteringCoefficients out;
  out.k = k;
  out.k_in = kt;
  out.D = (k * k + kt * kt) * s + 2.0 * kI * k * kt * c;
  const Complex e = std::exp(-kI * k * a);
  out.R = e * (k * k - kt * kt) * s / out.D;
  out.T = e * 2.0 * kI * k * kt / out.D;
  const Complex pref = kI * k * kt / out.D;
  if (conv == Convention::Printed) {
    out.A_plus = pref * (1.0 + k / kt);
    out.A_minus = pref * (1.0 - k / kt);
  } else {
    out.A_plus = std::exp(-kI * (k + kt) * a / 2.0) * pref * (1.0 + k / kt);
    out.A_minus = std::exp(-kI * (k - kt) * a / 2.0) * pref * (1.0 - k / kt);
  }
  return out;
}

// Continuity of φ and φ′ at x = ∓a/2, unknowns (R, A₊, A₋, T), unit incoming wave.
inline ScatteringCoefficients solve_matching_system(double k, const Potential& p) {
  require(k > 0.0, "solve_matching_system: k must be positive");
  require(p.family == Family::SquareWell, "solve_matching_system: potential is not a square well");
  const double a = p.width, xl = -0.5 * a, xr = 0.5 * a;
  const Complex kt = inside_wavenumber(k, p.strength);
  auto ep = [](Complex q, double x) { return std::exp(kI * q * x); };
  Eigen::Matrix4cd M;
  Eigen::Vector4cd rhs;
  M << -ep(-k, xl), ep(kt, xl), ep(-kt, xl), 0.0,
       kI * k * ep(-k, xl), kI * kt * ep(kt, xl), -kI * kt * ep(-kt, xl), 0.0,
       0.0, ep(kt, xr), ep(-kt, xr), -ep(k, xr),
       0.0, kI * kt * ep(kt, xr), -kI * kt * ep(-kt, xr), -kI * k * ep(k, xr);
  rhs << ep(k, xl), kI * k * ep(k, xl), 0.0, 0.0;
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(M);
  const auto& sv = svd.singularValues();
  const double cond = sv(3) > 0.0 ? sv(0) / sv(3) : std::numeric_limits<double>::infinity();
  if (!(cond < 1e14)) throw DomainError("solve_matching_system: singular matching system");
  const Eigen::Vector4cd sol = M.fullPivLu().solve(rhs);
  ScatteringCoefficients out;
  out.k = k;
  out.k_in = kt;
  out.R = sol(0);
  out.A_plus = sol(1);
  out.A_minus = sol(2);
  out.T = sol(3);
  out.condition = cond;
  const Complex s = std::sin(kt * a), c = std::cos(kt * a);
  out.D = (k * k + kt * kt) * s + 2.0 * kI * k * kt * c;
  return out;
}

// Canonical attractive unit strength: R = i/(k−i), T = k/(k−i).
inline ScatteringCoefficients delta_coefficients(double k) {
  require(k > 0.0, "delta_coefficients: k must be positive");
  ScatteringCoefficients c;
  c.k = k;
  c.k_in = k;
  c.R = kI / (k - kI);
  c.T = k / (k - kI);
  return c;
}

// g δ(x): φ′ jumps by 2g φ(0), giving R = −ig/(k+ig), T = k/(k+ig).
inline ScatteringCoefficients delta_coefficients(double k, double g) {
  require(k > 0.0, "delta_coefficients: k must be positive");
  ScatteringCoefficients c;
  c.k = k;
  c.k_in = k;
  c.R = -kI * g / (k + kI * g);
  c.T = k / (k + kI * g);
  return c;
}

// ν from 2V₀/μ² = −ν(ν+1), root with Re ν >= −1/2.
inline Complex sech2_nu(double V0, double mu = 1.0) {
  require(mu > 0.0, "sech2_nu: mu must be positive");
  return -0.5 + std::sqrt(Complex(0.25 - 2.0 * V0 / (mu * mu), 0.0));
}

// Γ-ratio coefficients for V₀/cosh²x (μ = 1 units; rescale k by 1/μ otherwise).
inline ScatteringCoefficients sech2_coefficients(double k, Complex nu) {
  require(k > 0.0, "sech2_coefficients: k must be positive");
  if (nu.imag() == 0.0 && (nu.real() == 0.0 || nu.real() == -1.0))
    throw DomainError("sech2_coefficients: nu = 0 sits on a Gamma pole");
  const Complex ik = kI * k;
  // T = Γ(1+ν−ik)Γ(−ν−ik) / (Γ(−ik)Γ(1−ik))
  const Complex lt = complex_log_gamma(1.0 + nu - ik) + complex_log_gamma(-nu - ik) - complex_log_gamma(-ik) -
                     complex_log_gamma(1.0 - ik);
  // R = Γ(ik)Γ(1+ν−ik)Γ(−ν−ik) / (Γ(−ik)Γ(1+ν)Γ(−ν))
  const Complex lr = complex_log_gamma(ik) + complex_log_gamma(1.0 + nu - ik) + complex_log_gamma(-nu - ik) -
                     complex_log_gamma(-ik);
  ScatteringCoefficients c;
  c.k = k;
  c.k_in = k;
  c.nu = nu;
  c.T = std::exp(lt);
  c.R = std::exp(lr) * reciprocal_gamma(1.0 + nu) * reciprocal_gamma(-nu);
  return c;
}

inline ScatteringCoefficients coefficients(const Potential& p, double k, Convention conv = Convention::Resolved) {
  switch (p.family) {
    case Family::Free: return free_coefficients(k);
    case Family::Delta:
      return p.strength == -1.0 ? delta_coefficients(k) : delta_coefficients(k, p.strength);
    case Family::SquareWell: return square_well_coefficients(k, p, conv);
    case Family::Sech2: {
      auto c = sech2_coefficients(k / p.inverse_range, sech2_nu(p.strength, p.inverse_range));
      c.k = k;
      c.k_in = k;
      return c;
    }
    case Family::Linear: break;
  }
  throw UnsupportedOperation("coefficients: no scattering coefficients for family " + family_name(p.family));
}

namespace detail {

struct ValueDeriv {
  Complex value;
  Complex deriv;
};

inline ValueDeriv plane_pair(double k, Complex A, Complex B, double x) {
  const Complex e = std::exp(kI * k * x);
  const Complex f = 1.0 / e;
  return {A * e + B * f, kI * k * (A * e - B * f)};
}

// log cosh X without overflow.
inline double log_cosh(double X) {
  const double ax = std::abs(X);
  return ax + std::log1p(std::exp(-2.0 * ax)) - std::log(2.0);
}

// Pöschl–Teller state in scaled units X = μx, q = k/μ:
// ψ = T 2^{iq} cosh(X)^{iq} F(−iq−ν, −iq+ν+1; 1−iq; 1/(1+e^{2X})).
inline ValueDeriv sech2_state(const ScatteringCoefficients& c, double mu, double x) {
  const double q = c.k / mu;
  const double X = mu * x;
  if (X > 30.0) return plane_pair(c.k, c.T, 0.0, x);
  if (X < -30.0) return plane_pair(c.k, 1.0, c.R, x);
  const Complex iq = kI * q;
  const Complex a = -iq - c.nu, b = -iq + c.nu + 1.0, cc = 1.0 - iq;
  const double z = 1.0 / (1.0 + std::exp(2.0 * X));
  const double w = 1.0 / (1.0 + std::exp(-2.0 * X));
  const Complex pre = c.T * std::exp(iq * (std::log(2.0) + log_cosh(X)));
  const Complex F = hyp2f1(a, b, cc, z, w);
  const Complex dF = a * b / cc * hyp2f1(a + 1.0, b + 1.0, cc + 1.0, z, w);
  const Complex val = pre * F;
  const Complex dX = pre * (iq * std::tanh(X) * F - 2.0 * z * w * dF);
  return {val, mu * dX};
}

inline ValueDeriv state(const Potential& p, const ScatteringCoefficients& c, double x) {
  const double k = c.k;
  switch (p.family) {
    case Family::Free: return plane_pair(k, 1.0, 0.0, x);
    case Family::Delta:
      if (x < 0.0) return plane_pair(k, 1.0, c.R, x);
      return plane_pair(k, c.T, 0.0, x);
    case Family::SquareWell: {
      const double h = 0.5 * p.width;
      if (x < -h) return plane_pair(k, 1.0, c.R, x);
      if (x > h) return plane_pair(k, c.T, 0.0, x);
      const Complex e = std::exp(kI * c.k_in * x);
      const Complex f = 1.0 / e;
      return {c.A_plus * e + c.A_minus * f, kI * c.k_in * (c.A_plus * e - c.A_minus * f)};
    }
    case Family::Sech2: return sech2_state(c, p.inverse_range, x);
    case Family::Linear: break;
  }
  throw UnsupportedOperation("eval_wavefunction: unsupported family " + family_name(p.family));
}

}  // namespace detail

inline Complex eval_wavefunction(const Potential& p, const ScatteringCoefficients& c, double x) {
  return detail::state(p, c, x).value;
}

inline Complex eval_wavefunction_derivative(const Potential& p, const ScatteringCoefficients& c, double x) {
  return detail::state(p, c, x).deriv;
}

inline MatchingResidual matching_residual(const Potential& p, const ScatteringCoefficients& c) {
  require(p.family == Family::SquareWell, "matching_residual: potential is not a square well");
  const double h = 0.5 * p.width;
  const auto outL = detail::plane_pair(c.k, 1.0, c.R, -h);
  const auto outR = detail::plane_pair(c.k, c.T, 0.0, h);
  auto inner = [&](double x) {
    const Complex e = std::exp(kI * c.k_in * x), f = 1.0 / e;
    return detail::ValueDeriv{c.A_plus * e + c.A_minus * f, kI * c.k_in * (c.A_plus * e - c.A_minus * f)};
  };
  const auto inL = inner(-h), inR = inner(h);
  return {inL.value - outL.value, inL.deriv - outL.deriv, outR.value - inR.value, outR.deriv - inR.deriv};
}

struct BoundaryModulusDifference {
  double direct = 0.0;       // |φ(−a/2)|² − |φ(a/2)|²
  double closed_form = 0.0;  // 4k²(k²−k̃²) sin²(k̃a)/|D|², real interior only
  bool closed_form_valid = false;
};

inline BoundaryModulusDifference boundary_modulus_difference(double k, const Potential& p) {
  require(p.family == Family::SquareWell, "boundary_modulus_difference: potential is not a square well");
  const auto c = square_well_coefficients(k, p);
  const double h = 0.5 * p.width;
  BoundaryModulusDifference out;
  // Outer branches only, so the result does not lean on the interior coefficients.
  out.direct = std::norm(std::exp(-kI * k * h) + c.R * std::exp(kI * k * h)) - std::norm(c.T);
  if (c.k_in.imag() == 0.0) {
    const double kt = c.k_in.real();
    const double s = std::sin(kt * p.width);
    out.closed_form = 4.0 * k * k * (k * k - kt * kt) * s * s / std::norm(c.D);
    out.closed_form_valid = true;
    if (std::abs(out.closed_form - out.direct) > 1e-10 * std::max(1.0, std::abs(out.direct)))
      throw ConvergenceError("boundary_modulus_difference: direct and closed-form values disagree");
  }
  return out;
}

}  // namespace scatterkit
