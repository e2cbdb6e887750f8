// Evolves a coherent state under exp(i H^2 t) and tracks how close it is
// to the two-branch cat; at quarter period the match is exact.

#include <cstdio>
#include <numbers>

#include "dimer/coherent.hpp"
#include "dimer/dynamics.hpp"

int main() {
  const dimer::CoherentParams p{{1.5, 0.0}, {0.0, 0.5}, dimer::Convention::cd};
  const dimer::FockVector cs = dimer::coherent_state(p);
  const dimer::FockVector cat = dimer::predicted_cat(p, 0.0);

  std::printf("t/pi    |<cs|psi(t)>|   |<cat|psi(t)>|\n");
  for (int step = 0; step <= 16; ++step) {
    const double t = std::numbers::pi * step / 32.0;
    const dimer::FockVector evolved = dimer::evolve_h2(cs, t);
    std::printf("%.4f  %.12f  %.12f\n", t / std::numbers::pi, dimer::fidelity(cs, evolved),
                dimer::fidelity(cat, evolved));
  }
  return 0;
}
