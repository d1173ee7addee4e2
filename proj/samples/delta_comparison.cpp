// Non-orthogonality term of two square-well states by every available
// method, next to the same pair for a δ potential (where it vanishes).
#include <cstdio>

#include "scatterkit/scatterkit.hpp"

int main() {
  using namespace scatterkit;
  const double k1 = 1.1, k2 = 1.7;
  for (const Potential& p : {square_well(0.5, 2.0), delta_potential(-1.0), sech2_potential(-0.7)}) {
    const auto r = delta_report(p, k1, k2);
    std::printf("%s  k1=%g k2=%g\n", potential_spec(p).c_str(), k1, k2);
    std::printf("  amplitude formula       % .12f %+.12fi\n", r.delta_general.real(), r.delta_general.imag());
    if (r.delta_closed_form)
      std::printf("  %-22s  % .12f %+.12fi\n", r.closed_form_name.c_str(), r.delta_closed_form->real(),
                  r.delta_closed_form->imag());
    if (r.delta_printed)
      std::printf("  printed form            % .12f %+.12fi\n", r.delta_printed->real(), r.delta_printed->imag());
    std::printf("  %-22s  % .12f %+.12fi\n", r.oracle_name.c_str(), r.delta_oracle.real(), r.delta_oracle.imag());
    std::printf("  max disagreement        %.3g\n\n", r.max_pairwise_disagreement);
  }
}
