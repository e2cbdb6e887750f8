#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dimer/fock.hpp"
#include "dimer/matrix.hpp"

// Closed-form eigensystem of the hopping Hamiltonian on block k:
//
//   (c^+)^m (d^+)^(k-m) |vacuum>,   m = 0..k,   eigenvalue 2m - k,
//
// with squared norm m!(k-m)!. The normalized family is an orthonormal
// basis of the block. Coefficients in that basis can be computed either
// by plain inner products or by cascading the level-normalized maps
//   c_k = (a_2 + a_3)/sqrt(2k),  d_k = (a_2 - a_3)/sqrt(2k)
// down to the vacuum; the two routes agree and both cost O(k^3).

namespace dimer {

inline int eigenvalue(int k, int m) {
  if (k < 0 || m < 0 || m > k) throw std::out_of_range("eigenvalue: need 0 <= m <= k");
  return 2 * m - k;
}

struct EigenIndex {
  int k = 0;
  int m = 0;
  int value() const { return eigenvalue(k, m); }
};

inline double factorial(int n) {
  double f = 1.0;
  for (int j = 2; j <= n; ++j) f *= double(j);
  return f;
}

// ||eigenvector_raw(k, m)||^2 = m!(k-m)!
inline double raw_norm_sq(int k, int m) {
  eigenvalue(k, m);
  return factorial(m) * factorial(k - m);
}

// The product construction verbatim: (k-m) d^+ applications followed by
// m c^+ applications on the vacuum. Not normalized.
inline BlockVector eigenvector_raw(int k, int m) {
  eigenvalue(k, m);
  BlockVector v = BlockVector::basis({0, 0});
  for (int j = 0; j < k - m; ++j) v = apply_d_dagger(v);
  for (int j = 0; j < m; ++j) v = apply_c_dagger(v);
  return v;
}

// Unit-norm eigenvector; normalization is folded into the recursion step
// by step so no factorial is ever formed.
inline BlockVector eigenvector_normalized(int k, int m) {
  eigenvalue(k, m);
  BlockVector v = BlockVector::basis({0, 0});
  for (int j = 1; j <= k - m; ++j) {
    v = apply_d_dagger(v);
    v *= 1.0 / std::sqrt(double(j));
  }
  for (int j = 1; j <= m; ++j) {
    v = apply_c_dagger(v);
    v *= 1.0 / std::sqrt(double(j));
  }
  return v;
}

// Columns are the normalized eigenvectors of block k (they are real).
inline RealMatrix eigenbasis_matrix(int k) {
  if (k < 0) throw std::invalid_argument("eigenbasis_matrix: negative block");
  RealMatrix e(k + 1, k + 1);
  for (int m = 0; m <= k; ++m) {
    const BlockVector v = eigenvector_normalized(k, m);
    for (int a = 0; a <= k; ++a) e(a, m) = v.amps[a].real();
  }
  return e;
}

// Level-normalized lowering maps. The norm split
//   ||c_k x||^2 + ||d_k x||^2 = ||x||^2
// is what makes the cascade unitary.
inline BlockVector apply_ck(const BlockVector& v) {
  if (v.empty() || v.particles() == 0) throw std::domain_error("apply_ck: empty block");
  BlockVector out = apply_c(v);
  out *= 1.0 / std::sqrt(double(v.particles()));
  return out;
}

inline BlockVector apply_dk(const BlockVector& v) {
  if (v.empty() || v.particles() == 0) throw std::domain_error("apply_dk: empty block");
  BlockVector out = apply_d(v);
  out *= 1.0 / std::sqrt(double(v.particles()));
  return out;
}

// The 2k x (k+1) stack of c_k over d_k. Columns are orthonormal, which
// makes it a unitary immersion of block k into two copies of block k-1.
inline RealMatrix immersion_matrix(int k) {
  if (k < 1) throw std::domain_error("immersion_matrix: empty block");
  RealMatrix m(2 * k, k + 1);
  const double inv = 1.0 / std::sqrt(2.0 * double(k));
  for (int i = 0; i < k; ++i) {
    const double lo = std::sqrt(double(k - i)) * inv;  // multiplies amplitude i
    const double hi = std::sqrt(double(i + 1)) * inv;  // multiplies amplitude i+1
    m(i, i) = lo;
    m(i, i + 1) = hi;
    m(k + i, i) = -lo;
    m(k + i, i + 1) = hi;
  }
  return m;
}

// Coefficients over the normalized eigenbasis of one block, indexed by m.
struct EigenCoeffs {
  std::vector<Complex> coeffs;

  bool empty() const { return coeffs.empty(); }
  int particles() const { return int(coeffs.size()) - 1; }

  double norm_sq() const {
    double s = 0.0;
    for (const Complex& c : coeffs) s += std::norm(c);
    return s;
  }
  friend bool operator==(const EigenCoeffs&, const EigenCoeffs&) = default;
};

// Plain route: inner products with the eigenbasis columns.
inline EigenCoeffs to_eigenbasis_direct(const BlockVector& v) {
  EigenCoeffs out;
  if (v.empty()) return out;
  const int k = v.particles();
  const RealMatrix e = eigenbasis_matrix(k);
  out.coeffs.assign(std::size_t(k) + 1, Complex(0.0, 0.0));
  for (int m = 0; m <= k; ++m) {
    Complex s(0.0, 0.0);
    for (int a = 0; a <= k; ++a) s += e(a, m) * v.amps[a];
    out.coeffs[m] = s;
  }
  return out;
}

inline BlockVector from_eigenbasis(const EigenCoeffs& c) {
  if (c.empty()) return {};
  const int k = c.particles();
  const RealMatrix e = eigenbasis_matrix(k);
  BlockVector out = BlockVector::zero(k);
  for (int a = 0; a <= k; ++a) {
    Complex s(0.0, 0.0);
    for (int m = 0; m <= k; ++m) s += e(a, m) * c.coeffs[m];
    out.amps[a] = s;
  }
  return out;
}

// Cascade route: walk the Pascal triangle of c_j/d_j applications down to
// scalars. All interleavings with the same (m, k-m) signature agree, so
// each node is computed once; the signature-m scalar times
// sqrt(binomial(k, m)) is the coefficient over the normalized eigenbasis
// (the binomial counts the merged paths, each carrying the same scalar).
// Total work is O(k^3); pass flop_count to measure it.
inline EigenCoeffs to_eigenbasis_cascade(const BlockVector& v, std::uint64_t* flop_count = nullptr) {
  EigenCoeffs out;
  if (v.empty()) return out;
  const int k = v.particles();
  out.coeffs.assign(std::size_t(k) + 1, Complex(0.0, 0.0));
  std::uint64_t flops = 0;

  std::vector<double> root(std::size_t(k) + 2);
  for (int a = 0; a < k + 2; ++a) root[a] = std::sqrt(double(a));

  // nodes[i] after s applications: i of them were c-type, block size k-s+1
  std::vector<std::vector<Complex>> nodes{v.amps};
  for (int s = 0; s < k; ++s) {
    const int j = k - s;  // particle number before this step
    const double inv = 1.0 / std::sqrt(2.0 * double(j));
    std::vector<std::vector<Complex>> next(std::size_t(s) + 2);
    for (int i = 0; i <= s + 1; ++i) {
      const bool use_c = (i == s + 1);                    // c on the top node, d elsewhere
      const std::vector<Complex>& src = nodes[use_c ? s : i];
      std::vector<Complex>& dst = next[i];
      dst.resize(std::size_t(j));
      for (int a = 0; a < j; ++a) {
        const Complex lowered = use_c ? root[a + 1] * src[a + 1] + root[j - a] * src[a]
                                      : root[a + 1] * src[a + 1] - root[j - a] * src[a];
        dst[a] = inv * lowered;
        flops += 8;
      }
    }
    nodes = std::move(next);
  }

  double binom = 1.0;  // binomial(k, m) by multiplicative recurrence
  for (int m = 0; m <= k; ++m) {
    out.coeffs[m] = std::sqrt(binom) * nodes[m][0];
    flops += 3;
    binom *= double(k - m) / double(m + 1);
  }
  if (flop_count) *flop_count = flops;
  return out;
}

}  // namespace dimer
