#pragma once

#include <cmath>
#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "scatterkit/analytic_states.hpp"
#include "scatterkit/common.hpp"
#include "scatterkit/oracle.hpp"
#include "scatterkit/overlap_engine.hpp"

namespace scatterkit {

// Δ for ⟨φ_{k₂}|φ_{k₁}⟩ from the asymptotic amplitudes alone.
inline Complex delta_term_1d(Complex R1, Complex T1, Complex R2, Complex T2, double k1, double k2) {
  require(k1 > 0.0 && k2 > 0.0, "delta_term_1d: momenta must be positive");
  if (k1 == k2) throw DomainError("delta_term_1d: degenerate momenta");
  return kI * ((std::conj(T2) * T1 - 1.0) + std::conj(R2) * R1) / (k1 - k2) + kI * (R1 - std::conj(R2)) / (k1 + k2);
}

inline Complex delta_term_1d(const Potential& p, double k1, double k2) {
  const auto c1 = coefficients(p, k1), c2 = coefficients(p, k2);
  return delta_term_1d(c1.R, c1.T, c2.R, c2.T, k1, k2);
}

// Transparency index n with k̃a = nπ, or nullopt if k is not a transparency point.
inline std::optional<int> transparency_index(double k, const Potential& p, double tol = 1e-8) {
  require(p.family == Family::SquareWell, "transparency_index: potential is not a square well");
  const Complex kt = inside_wavenumber(k, p.strength);
  if (kt.imag() != 0.0 || kt.real() <= 0.0) return std::nullopt;
  const double ratio = kt.real() * p.width / kPi;
  const double n = std::round(ratio);
  if (n < 1.0 || std::abs(ratio - n) > tol) return std::nullopt;
  return static_cast<int>(n);
}

// Momentum of the n-th transparency point: k̃a = nπ.
inline double transparency_momentum(int n, const Potential& p) {
  require(p.family == Family::SquareWell && n >= 1, "transparency_momentum: need a square well and n >= 1");
  const double kt = n * kPi / p.width;
  const double k2 = kt * kt + 2.0 * p.strength;
  require(k2 > 0.0, "transparency_momentum: no scattering state at this n");
  return std::sqrt(k2);
}

// Printed: i(e^{i(k₁−k₂)a} − 1)/(k₁−k₂), from T = e^{ika}.
// Resolved: T = (−1)ⁿe^{−ika}, giving i((−1)^{n₁+n₂}e^{−i(k₁−k₂)a} − 1)/(k₁−k₂).
inline Complex transparency_formula(double k1, double k2, double a, int n1, int n2,
                                    Convention conv = Convention::Resolved) {
  if (k1 == k2) throw DomainError("delta_term_transparency: degenerate momenta");
  const double dk = k1 - k2;
  if (conv == Convention::Printed) return kI * (std::exp(kI * dk * a) - 1.0) / dk;
  const double sign = ((n1 + n2) % 2 == 0) ? 1.0 : -1.0;
  return kI * (sign * std::exp(-kI * dk * a) - 1.0) / dk;
}

inline Complex delta_term_transparency(double k1, double k2, const Potential& p,
                                       Convention conv = Convention::Resolved) {
  const auto n1 = transparency_index(k1, p), n2 = transparency_index(k2, p);
  if (!n1 || !n2) throw InvalidArgument("delta_term_transparency: momenta are not at transparency points");
  return transparency_formula(k1, k2, p.width, *n1, *n2, conv);
}

namespace detail {

// ∫_{−a/2}^{a/2} e^{iwx} dx
inline Complex centered_integral(Complex w, double a) { return exp_integral(w, -0.5 * a, 0.5 * a); }

}  // namespace detail

// Square-well Δ(k₁, k₂) in block form: minus the finite part of
// ⟨φ_{k₂}|φ_{k₁}⟩ with the far-endpoint oscillations set to their value at
// the origin. Outer left has frequencies ±(k₁−k₂), ±(k₁+k₂), the interior
// ±k̂₁ ± k̂₂*, outer right k₁−k₂.
inline Complex delta_term_square_well(double k1, double k2, const Potential& p) {
  require(p.family == Family::SquareWell, "delta_term_square_well: potential is not a square well");
  require(k1 > 0.0 && k2 > 0.0, "delta_term_square_well: momenta must be positive");
  if (k1 == k2) throw DomainError("delta_term_square_well: degenerate momenta");
  const double a = p.width, h = 0.5 * a;
  const auto c1 = square_well_coefficients(k1, p), c2 = square_well_coefficients(k2, p);
  auto left = [&](double w) { return (std::exp(-kI * w * h) - 1.0) / (kI * w); };
  auto right = [&](double w) { return (1.0 - std::exp(kI * w * h)) / (kI * w); };
  const double dm = k1 - k2, dp = k1 + k2;
  Complex outer = left(dm) + std::conj(c2.R) * c1.R * left(-dm);
  outer += std::conj(c2.R) * left(dp);
  outer += c1.R * left(-dp);
  outer += std::conj(c2.T) * c1.T * right(dm);
  const Complex q1 = c1.k_in, q2 = std::conj(c2.k_in);
  Complex inner = std::conj(c2.A_plus) * c1.A_plus * detail::centered_integral(q1 - q2, a);
  inner += std::conj(c2.A_minus) * c1.A_minus * detail::centered_integral(-q1 + q2, a);
  inner += std::conj(c2.A_plus) * c1.A_minus * detail::centered_integral(-q1 - q2, a);
  inner += std::conj(c2.A_minus) * c1.A_plus * detail::centered_integral(q1 + q2, a);
  return -(outer + inner);
}

// The square-well Δ expression exactly as printed, k = k₁ (ket), k′ = k₂.
// Kept for the three-way report; it does not agree with the other methods.
inline Complex delta_term_square_well_printed(double k1, double k2, const Potential& p) {
  require(p.family == Family::SquareWell, "delta_term_square_well_printed: potential is not a square well");
  if (k1 == k2 || k1 == -k2) throw DomainError("delta_term_square_well_printed: degenerate momenta");
  const double a = p.width, V0 = p.strength;
  const Complex kh = inside_wavenumber(k1, V0), khp = inside_wavenumber(k2, V0);
  if (kh.imag() != 0.0 || khp.imag() != 0.0)
    throw DomainError("delta_term_square_well_printed: needs real interior wavenumbers");
  const double k = k1, kp = k2, q = kh.real(), qp = khp.real();
  const auto c1 = square_well_coefficients(k, p), c2 = square_well_coefficients(kp, p);
  const Complex D = c1.D, Dp = c2.D;
  const Complex Dps = std::conj(Dp);
  const double s = std::sin(q * a), sp = std::sin(qp * a), c = std::cos(q * a), cp = std::cos(qp * a);

  const Complex block1_inner =
      (1.0 / kI) * std::exp(-kI * (k - kp) * a / 2.0) / (k - kp) *
          (Dps * D - (kp * kp - qp * qp) * sp * (k * k - q * q) * s - 2.0 * kp * qp * (2.0 * k * q)) +
      2.0 * std::sin((q - qp) * a / 2.0) / (q - qp) * k * kp * (qp * k + kp * q);
  const Complex block1 = block1_inner / (Dps * D);
  const Complex block2 = (1.0 / kI) * (-1.0 / (k + kp)) * 2.0 * V0 * std::exp(kI * (kp - k) * a / 2.0) / (D * Dps) *
                         (2.0 * (kp * kp - k * k) * s * sp - 2.0 * kI * kp * qp * cp * s - 2.0 * kI * k * q * c * sp);
  const Complex block3 = 1.0 / (Dps * D) * std::exp(kI * (kp + qp - k - q) * a / 2.0) * 2.0 *
                         (kp * qp * k * q - kp * kp * k * k) * (1.0 / (kI * (q + qp))) *
                         (-std::exp(-kI * (q + qp) * a / 2.0) + std::exp(kI * (q + qp) * a / 2.0));
  return block1 + block2 + block3;
}

// Radial Δ for ⟨φ_{k₂}|φ_{k₁}⟩ on r ≥ 0 (m = 1/2), including the r = 0 current.
inline Complex delta_term_radial(Complex T1, Complex R1, Complex T2, Complex R2, Complex phi0_1, Complex dphi0_1,
                                 Complex phi0_2, Complex dphi0_2, double k1, double k2) {
  if (k1 == k2 || k1 == -k2) throw DomainError("delta_term_radial: degenerate momenta");
  const Complex bulk = -kI * (k1 + k2) * (std::conj(T2) * T1 - std::conj(R2) * R1) +
                       kI * (k1 - k2) * (std::conj(T2) * R1 - std::conj(R2) * T1);
  const Complex origin = std::conj(phi0_2) * (-dphi0_1) - phi0_1 * (-std::conj(dphi0_2));
  return (bulk - origin) / (k1 * k1 - k2 * k2);
}

struct DeltaTermReport {
  double k1 = 0.0, k2 = 0.0;
  Complex delta_general = 0.0;
  std::optional<Complex> delta_closed_form;
  std::string closed_form_name;
  std::optional<Complex> delta_printed;  // square-well expression as printed
  Complex delta_oracle = 0.0;
  std::string oracle_name;
  double max_pairwise_disagreement = 0.0;  // over general, closed form, oracle
  std::optional<double> printed_disagreement;  // |printed − oracle|
};

// Oracle: Cesàro extraction from windowed overlaps (λ₀ = 1000 × range, at
// least 16π/|k₁−k₂|) for piecewise families, asymptotic subtraction for sech².
inline DeltaTermReport delta_report(const Potential& p, double k1, double k2) {
  if (p.family == Family::Linear) throw UnsupportedOperation("delta_report: no scattering states for the linear family");
  DeltaTermReport r;
  r.k1 = k1;
  r.k2 = k2;
  r.delta_general = delta_term_1d(p, k1, k2);
  switch (p.family) {
    case Family::Free:
    case Family::Delta:
      r.delta_closed_form = Complex(0.0);
      r.closed_form_name = "zero";
      break;
    case Family::SquareWell: {
      r.delta_closed_form = delta_term_square_well(k1, k2, p);
      r.closed_form_name = "square_well_block";
      if (transparency_index(k1, p) && transparency_index(k2, p)) {
        r.delta_closed_form = delta_term_transparency(k1, k2, p);
        r.closed_form_name = "transparency";
      }
      const Complex q1 = inside_wavenumber(k1, p.strength), q2 = inside_wavenumber(k2, p.strength);
      if (q1.imag() == 0.0 && q2.imag() == 0.0 && q1.real() != q2.real()) r.delta_printed = delta_term_square_well_printed(k1, k2, p);
      break;
    }
    default:
      break;
  }
  if (p.family == Family::Sech2) {
    r.delta_oracle = oracle::sech2_delta_subtracted(p, k1, k2);
    r.oracle_name = "asymptotic_subtraction";
  } else {
    const double scale = p.family == Family::SquareWell ? p.width : 1.0;
    const double lambda0 = std::max(1000.0 * scale, 16.0 * kPi / std::abs(k1 - k2));
    r.delta_oracle = oracle::cesaro_delta_extract(p, k1, k2, lambda0).averaged;
    r.oracle_name = "cesaro";
  }
  std::vector<Complex> vals = {r.delta_general, r.delta_oracle};
  if (r.delta_closed_form) vals.push_back(*r.delta_closed_form);
  for (std::size_t i = 0; i < vals.size(); ++i)
    for (std::size_t j = i + 1; j < vals.size(); ++j)
      r.max_pairwise_disagreement = std::max(r.max_pairwise_disagreement, std::abs(vals[i] - vals[j]));
  if (r.delta_printed) r.printed_disagreement = std::abs(*r.delta_printed - r.delta_oracle);
  return r;
}

}  // namespace scatterkit
