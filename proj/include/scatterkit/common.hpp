#pragma once

#include <algorithm>
#include <complex>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace scatterkit {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

// Error hierarchy. Everything derives from std::runtime_error so callers can
// catch a single type; the CLI maps the subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller broke a documented precondition (bad parameter, bad window, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Mathematically undefined at the requested point (pole, degenerate energy).
class DomainError : public Error {
 public:
  using Error::Error;
};

// An iterative or adaptive procedure ran out of budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Operation is not defined for this potential family.
class UnsupportedOperation : public Error {
 public:
  using Error::Error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw InvalidArgument(what);
}

// Worker count for grid sweeps: SCATTERKIT_THREADS if set and positive,
// otherwise the hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("SCATTERKIT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

// Static block partition of [0, n). Each index is written by exactly one
// worker, so results are independent of the thread count.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// ∫_{x1}^{x2} e^{i w x} dx for complex w, stable as w -> 0.
inline Complex exp_integral(Complex w, double x1, double x2) {
  const double mid = 0.5 * (x1 + x2);
  const double half = 0.5 * (x2 - x1);
  const Complex wh = w * half;
  Complex sinc;
  if (std::abs(wh) < 1e-4) {
    const Complex s = wh * wh;
    sinc = 1.0 - s / 6.0 + s * s / 120.0;
  } else {
    sinc = std::sin(wh) / wh;
  }
  return std::exp(kI * w * mid) * (2.0 * half) * sinc;
}

inline double relative_error(Complex got, Complex want, double floor = 1e-300) {
  return std::abs(got - want) / std::max(std::abs(want), floor);
}

}  // namespace scatterkit
