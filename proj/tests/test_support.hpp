#pragma once

#include <cstdint>

#include "dimer/fock.hpp"
#include "dimer/matrix.hpp"

// Deterministic pseudo-random states for property-style checks.

namespace testsup {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }
  double symmetric() { return 2.0 * uniform() - 1.0; }
  dimer::Complex complex_box() {
    const double re = symmetric();
    const double im = symmetric();
    return {re, im};
  }

  dimer::BlockVector block(int k) {
    dimer::BlockVector v = dimer::BlockVector::zero(k);
    for (int a = 0; a <= k; ++a) v.amps[a] = complex_box();
    return v;
  }

  dimer::RealMatrix symmetric_matrix(int n) {
    dimer::RealMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) {
        const double x = symmetric();
        m(i, j) = x;
        m(j, i) = x;
      }
    return m;
  }

 private:
  std::uint64_t state_;
};

inline double diff_norm(const dimer::BlockVector& a, const dimer::BlockVector& b) {
  dimer::BlockVector d = a;
  d -= b;
  return d.norm();
}

inline double diff_norm(const dimer::FockVector& a, const dimer::FockVector& b) {
  dimer::FockVector d = a;
  d -= b;
  return d.norm();
}

}  // namespace testsup
