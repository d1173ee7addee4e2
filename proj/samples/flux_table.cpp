// |R|², |T|² and the flux defect for a square well over a momentum grid,
// written as CSV to stdout.
#include <iostream>

#include "scatterkit/io.hpp"
#include "scatterkit/scatterkit.hpp"

int main() {
  using namespace scatterkit;
  const Potential well = square_well(0.5, 2.0);
  io::CsvWriter csv(std::cout, {"k", "R2", "T2", "defect", "evanescent"});
  for (int i = 1; i <= 40; ++i) {
    const double k = 0.1 * i;
    if (std::abs(inside_wavenumber(k, well.strength)) < 1e-9) continue;
    const auto c = coefficients(well, k);
    const double r2 = std::norm(c.R), t2 = std::norm(c.T);
    csv.row() << k << r2 << t2 << r2 + t2 - 1.0 << (inside_wavenumber(k, well.strength).imag() != 0.0);
  }
}
