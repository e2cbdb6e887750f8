// Prints the closed-form spectrum and eigenvectors for small blocks,
// with kets shown by their integer labels.

#include <cstdio>

#include "dimer/eigensystem.hpp"
#include "dimer/fock.hpp"

int main() {
  for (int k = 0; k <= 4; ++k) {
    std::printf("k = %d\n", k);
    for (int m = 0; m <= k; ++m) {
      const dimer::BlockVector v = dimer::eigenvector_normalized(k, m);
      std::printf("  eigenvalue %+d:", dimer::eigenvalue(k, m));
      for (int a = 0; a <= k; ++a) {
        const double amp = v.amps[a].real();
        if (std::abs(amp) < 1e-14) continue;
        const dimer::BasisState s{a, k - a};
        std::printf(" %+.4f |%llu>", amp, static_cast<unsigned long long>(dimer::integer_label(s)));
      }
      std::printf("\n");
    }
  }
  return 0;
}
