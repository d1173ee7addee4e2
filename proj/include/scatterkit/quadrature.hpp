#pragma once

#include <array>
#include <cmath>
#include <queue>
#include <type_traits>
#include <utility>
#include <vector>

#include "scatterkit/common.hpp"

namespace scatterkit::quad {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [-1, 1]; Newton iteration on P_n.
inline Rule gauss_legendre(std::size_t n) {
  require(n >= 1, "gauss_legendre: n must be positive");
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const std::size_t m = (n + 1) / 2;
  for (std::size_t i = 0; i < m; ++i) {
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p1 = x, p0 = 1.0;
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = r.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  if (n == 1) {
    r.nodes[0] = 0.0;
    r.weights[0] = 2.0;
  }
  return r;
}

inline Rule gauss_legendre(std::size_t n, double a, double b) {
  Rule r = gauss_legendre(n);
  const double c = 0.5 * (b - a), d = 0.5 * (b + a);
  for (std::size_t i = 0; i < n; ++i) {
    r.nodes[i] = c * r.nodes[i] + d;
    r.weights[i] *= c;
  }
  return r;
}

namespace detail {

// Kronrod 15 / Gauss 7 abscissae and weights (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
double magnitude(const T& v) {
  return std::abs(v);
}

template <class F, class T>
std::pair<T, double> gk15(const F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const T fc = f(c);
  T kron = fc * kWgk[7];
  T gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const T f1 = f(c - dx), f2 = f(c + dx);
    kron += (f1 + f2) * kWgk[j];
    if (j % 2 == 1) gauss += (f1 + f2) * kWg[j / 2];
  }
  kron *= h;
  gauss *= h;
  return {kron, magnitude(kron - gauss)};
}

}  // namespace detail

template <class T>
struct Result {
  T value{};
  double error = 0.0;
  std::size_t panels = 0;
};

struct AdaptiveOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  std::size_t max_panels = 200000;
  // Initial panel count per interval between breakpoints; callers set this
  // from the integrand's oscillation period so no period is skipped.
  std::size_t initial_panels = 1;
};

// Globally adaptive Gauss-Kronrod (7/15) over [breaks.front(), breaks.back()],
// never straddling an interior breakpoint. T is double or Complex.
template <class F>
auto integrate(const F& f, std::vector<double> breaks, const AdaptiveOptions& opt = {})
    -> Result<std::invoke_result_t<F, double>> {
  using T = std::invoke_result_t<F, double>;
  require(breaks.size() >= 2, "integrate: need at least two breakpoints");
  struct Panel {
    double a, b;
    T value;
    double err;
    bool operator<(const Panel& o) const { return err < o.err; }
  };
  std::priority_queue<Panel> heap;
  T total{};
  double total_err = 0.0;
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    const double lo = breaks[s], hi = breaks[s + 1];
    if (!(hi > lo)) continue;
    const std::size_t np = std::max<std::size_t>(1, opt.initial_panels);
    for (std::size_t p = 0; p < np; ++p) {
      const double a = lo + (hi - lo) * static_cast<double>(p) / static_cast<double>(np);
      const double b = (p + 1 == np) ? hi : lo + (hi - lo) * static_cast<double>(p + 1) / static_cast<double>(np);
      auto [v, e] = detail::gk15<F, T>(f, a, b);
      heap.push({a, b, v, e});
      total += v;
      total_err += e;
    }
  }
  std::size_t panels = heap.size();
  while (!heap.empty()) {
    const double tol = std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(total));
    if (total_err <= tol) break;
    if (panels >= opt.max_panels) {
      throw ConvergenceError("integrate: panel budget exhausted (error " + std::to_string(total_err) +
                             ", tolerance " + std::to_string(tol) + ")");
    }
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Interval collapsed to machine resolution; accept what we have.
      heap.push(worst);
      break;
    }
    auto [v1, e1] = detail::gk15<F, T>(f, worst.a, mid);
    auto [v2, e2] = detail::gk15<F, T>(f, mid, worst.b);
    total += v1 + v2 - worst.value;
    total_err += e1 + e2 - worst.err;
    heap.push({worst.a, mid, v1, e1});
    heap.push({mid, worst.b, v2, e2});
    ++panels;
  }
  // Re-sum to shed the drift of the running updates.
  T sum{};
  double err = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    err += heap.top().err;
    heap.pop();
  }
  return {sum, err, panels};
}

template <class F>
auto integrate(const F& f, double a, double b, const AdaptiveOptions& opt = {}) {
  return integrate(f, std::vector<double>{a, b}, opt);
}

// ∫_{-∞}^{∞} f via x = t/(1-t²) on (-1, 1).
template <class F>
auto integrate_real_line(const F& f, const AdaptiveOptions& opt = {}) {
  auto g = [&](double t) {
    const double d = 1.0 - t * t;
    const double x = t / d;
    const double jac = (1.0 + t * t) / (d * d);
    using T = std::invoke_result_t<F, double>;
    if (!(d > 0.0)) return T{};
    return f(x) * jac;
  };
  return integrate(g, std::vector<double>{-1.0, 0.0, 1.0}, opt);
}

}  // namespace scatterkit::quad
