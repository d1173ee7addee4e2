// N(t) of a Gaussian packet built from square-well states: the Δ-kernel
// model next to brute-force ∫|ψ(t,x)|² dx.
#include <cstdio>

#include "scatterkit/scatterkit.hpp"

int main() {
  using namespace scatterkit;
  const Potential well = square_well(0.5, 2.0);
  const auto prof = gaussian_profile(5.0, 0.5, 64, 5.0);
  const auto kernel = build_norm_kernel(well, prof);
  std::printf("drift bound %.6f\n", norm_drift_bound(prof, delta_function(well)));
  std::printf("%6s %14s %14s\n", "t", "N_kernel", "N_position");
  for (double t : {0.0, 5.0, 10.0, 20.0, 40.0})
    std::printf("%6.1f %14.10f %14.10f\n", t, norm_at_time(kernel, prof, t).N, position_space_norm(well, prof, t));
  std::printf("2*pi   %14.10f\n", 2.0 * kPi);
}
