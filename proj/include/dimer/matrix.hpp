#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace dimer {

using Complex = std::complex<double>;

// Dense row-major real matrix. Small helper type; everything that can stay
// O(k) in the library does, dense storage is for oracles and reports.
struct RealMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  RealMatrix() = default;
  RealMatrix(int r, int c) : rows(r), cols(c), data(std::size_t(r) * std::size_t(c), 0.0) {
    if (r < 0 || c < 0) throw std::invalid_argument("RealMatrix: negative dimensions");
  }

  double& operator()(int i, int j) { return data[std::size_t(i) * cols + j]; }
  double operator()(int i, int j) const { return data[std::size_t(i) * cols + j]; }

  static RealMatrix identity(int n) {
    RealMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
};

inline RealMatrix matmul(const RealMatrix& a, const RealMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matmul: shape mismatch");
  RealMatrix out(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int l = 0; l < a.cols; ++l) {
      const double ail = a(i, l);
      if (ail == 0.0) continue;
      for (int j = 0; j < b.cols; ++j) out(i, j) += ail * b(l, j);
    }
  return out;
}

// m^T m; columns of m are orthonormal iff this is the identity.
inline RealMatrix gram(const RealMatrix& m) {
  RealMatrix out(m.cols, m.cols);
  for (int i = 0; i < m.cols; ++i)
    for (int j = 0; j < m.cols; ++j) {
      double s = 0.0;
      for (int l = 0; l < m.rows; ++l) s += m(l, i) * m(l, j);
      out(i, j) = s;
    }
  return out;
}

inline std::vector<Complex> matvec(const RealMatrix& m, const std::vector<Complex>& v) {
  if (int(v.size()) != m.cols) throw std::invalid_argument("matvec: shape mismatch");
  std::vector<Complex> out(m.rows, Complex(0.0, 0.0));
  for (int i = 0; i < m.rows; ++i) {
    Complex s(0.0, 0.0);
    for (int j = 0; j < m.cols; ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

inline double max_abs_diff(const RealMatrix& a, const RealMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("max_abs_diff: shape mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const double d = std::abs(a.data[i] - b.data[i]);
    if (d > worst) worst = d;
  }
  return worst;
}

}  // namespace dimer
