#pragma once

#include <cmath>
#include <stdexcept>

#include "dimer/fock.hpp"
#include "dimer/matrix.hpp"

// The hopping Hamiltonian H = a_2^+ a_3 + a_3^+ a_2 (hopping amplitude 1
// unless stated otherwise). Every particle-number block is invariant, and
// H restricted to block k is the (k+1)x(k+1) symmetric tridiagonal matrix
// with zero diagonal and off-diagonal entries sqrt((a+1)(k-a)).

namespace dimer {

// Off-diagonal entry coupling occupations a and a+1 inside block k.
inline double hopping_entry(int k, int a) { return std::sqrt(double(a + 1) * double(k - a)); }

struct HoppingMatrix {
  int k = 0;
  std::vector<double> offdiag;  // entry a couples a and a+1; palindromic

  // Dense materialization, refused above max_dim: a tridiagonal operator
  // never needs O(k^2) storage for the O(k) apply.
  RealMatrix dense(int max_dim = 2048) const {
    if (k + 1 > max_dim) throw std::length_error("HoppingMatrix::dense: dimension above cap");
    RealMatrix m(k + 1, k + 1);
    for (int a = 0; a < k; ++a) {
      m(a, a + 1) = offdiag[a];
      m(a + 1, a) = offdiag[a];
    }
    return m;
  }
};

inline HoppingMatrix build_hopping_matrix(int k, double amplitude = 1.0) {
  if (k < 0) throw std::invalid_argument("build_hopping_matrix: negative particle number");
  HoppingMatrix h;
  h.k = k;
  h.offdiag.resize(std::size_t(k));
  for (int a = 0; a < k; ++a) h.offdiag[a] = amplitude * hopping_entry(k, a);
  return h;
}

// Tridiagonal apply, O(k) arithmetic, stays inside the block.
inline BlockVector apply_hopping(const BlockVector& v, double amplitude = 1.0) {
  if (v.empty()) return {};
  const int k = v.particles();
  BlockVector out = BlockVector::zero(k);
  for (int a = 0; a < k; ++a) {
    const double e = amplitude * hopping_entry(k, a);
    out.amps[a] += e * v.amps[a + 1];
    out.amps[a + 1] += e * v.amps[a];
  }
  return out;
}

// Independent route through H = c^+ c - d^+ d, kept for cross-validation
// against the tridiagonal apply.
inline BlockVector apply_hopping_via_cd(const BlockVector& v) {
  if (v.empty()) return {};
  BlockVector out = BlockVector::zero(v.particles());
  out += apply_c_dagger(apply_c(v));
  out -= apply_d_dagger(apply_d(v));
  return out;
}

inline FockVector apply_hopping_full(const FockVector& v, double amplitude = 1.0) {
  FockVector out;
  for (const auto& [k, b] : v.blocks) out.blocks.emplace(k, apply_hopping(b, amplitude));
  return out;
}

// Spin x-projection matrix for spin s = two_s/2, i.e. the hopping block
// scaled by 1/2 so that <m+1|S_x|m> = (1/2) sqrt((s-m)(s+m+1)) and the
// spectrum is {-s, -s+1, ..., s}.
inline RealMatrix spin_x_matrix(int two_s) {
  if (two_s < 0) throw std::invalid_argument("spin_x_matrix: negative 2s");
  RealMatrix m(two_s + 1, two_s + 1);
  for (int a = 0; a < two_s; ++a) {
    const double e = 0.5 * hopping_entry(two_s, a);
    m(a, a + 1) = e;
    m(a + 1, a) = e;
  }
  return m;
}

// Normal-ordered expansion of H^2:
//   H^2 = (a_2^+)^2 a_3^2 + (a_3^+)^2 a_2^2 + 2 a_2^+ a_3^+ a_2 a_3 + N
// (note the +2 on the cross term). Verification route for H applied twice.
inline BlockVector apply_hopping_squared_normal_ordered(const BlockVector& v) {
  if (v.empty()) return {};
  using enum Site;
  BlockVector out = apply_number(v);
  out += apply_create(p2, apply_create(p2, apply_annihilate(p3, apply_annihilate(p3, v))));
  out += apply_create(p3, apply_create(p3, apply_annihilate(p2, apply_annihilate(p2, v))));
  BlockVector cross = apply_create(p2, apply_create(p3, apply_annihilate(p2, apply_annihilate(p3, v))));
  cross *= 2.0;
  out += cross;
  return out;
}

// Normal-ordered expansion of N^2 with the matching structure:
//   N^2 = (a_2^+)^2 a_2^2 + (a_3^+)^2 a_3^2 + 2 a_2^+ a_3^+ a_2 a_3 + N
inline BlockVector apply_number_squared_normal_ordered(const BlockVector& v) {
  if (v.empty()) return {};
  using enum Site;
  BlockVector out = apply_number(v);
  out += apply_create(p2, apply_create(p2, apply_annihilate(p2, apply_annihilate(p2, v))));
  out += apply_create(p3, apply_create(p3, apply_annihilate(p3, apply_annihilate(p3, v))));
  BlockVector cross = apply_create(p2, apply_create(p3, apply_annihilate(p2, apply_annihilate(p3, v))));
  cross *= 2.0;
  out += cross;
  return out;
}

}  // namespace dimer
