#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "dimer/matrix.hpp"

// Brute-force verification path: a self-contained dense symmetric
// eigensolver (Householder tridiagonalization followed by implicit-shift
// QL, after the classical EISPACK tred2/tql2 routines) and spectral time
// evolution built on top of it. This header must stay independent of the
// closed-form eigensystem it is used to check.

namespace dimer {

class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& msg, double worst) : std::runtime_error(msg), worst_residual(worst) {}
  double worst_residual = 0.0;
};

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  RealMatrix eigenvectors;          // column j pairs with eigenvalues[j]
};

namespace detail {

// Householder reduction to tridiagonal form; transformations accumulate
// into v, diagonal into d, subdiagonal into e.
inline void tred2(RealMatrix& v, std::vector<double>& d, std::vector<double>& e) {
  const int n = v.rows;
  for (int j = 0; j < n; ++j) d[j] = v(n - 1, j);

  for (int i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (int l = 0; l < i; ++l) scale += std::abs(d[l]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (int j = 0; j < i; ++j) {
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
        v(j, i) = 0.0;
      }
    } else {
      for (int l = 0; l < i; ++l) {
        d[l] /= scale;
        h += d[l] * d[l];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0.0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (int j = 0; j < i; ++j) e[j] = 0.0;

      for (int j = 0; j < i; ++j) {
        f = d[j];
        v(j, i) = f;
        g = e[j] + v(j, j) * f;
        for (int l = j + 1; l <= i - 1; ++l) {
          g += v(l, j) * d[l];
          e[l] += v(l, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (int j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (int j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (int j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (int l = j; l <= i - 1; ++l) v(l, j) -= f * e[l] + g * d[l];
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  for (int i = 0; i < n - 1; ++i) {
    v(n - 1, i) = v(i, i);
    v(i, i) = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (int l = 0; l <= i; ++l) d[l] = v(l, i + 1) / h;
      for (int j = 0; j <= i; ++j) {
        double g = 0.0;
        for (int l = 0; l <= i; ++l) g += v(l, i + 1) * v(l, j);
        for (int l = 0; l <= i; ++l) v(l, j) -= g * d[l];
      }
    }
    for (int l = 0; l <= i; ++l) v(l, i + 1) = 0.0;
  }
  for (int j = 0; j < n; ++j) {
    d[j] = v(n - 1, j);
    v(n - 1, j) = 0.0;
  }
  v(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

// Implicit-shift QL on the tridiagonal (d, e); eigenvectors accumulate
// into the columns of v.
inline void tql2(RealMatrix& v, std::vector<double>& d, std::vector<double>& e) {
  const int n = v.rows;
  constexpr int max_iter = 64;
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  double f = 0.0;
  double tst1 = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    int m = l;
    while (m < n && std::abs(e[m]) > eps * tst1) ++m;

    if (m > l) {
      int iter = 0;
      do {
        if (++iter > max_iter)
          throw convergence_error("tql2: no convergence after " + std::to_string(max_iter) +
                                      " iterations, remaining off-diagonal " + std::to_string(std::abs(e[l])),
                                  std::abs(e[l]));
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0.0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (int i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0;
        double c2 = c;
        double c3 = c;
        const double el1 = e[l + 1];
        double s = 0.0;
        double s2 = 0.0;
        for (int i = m - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          for (int row = 0; row < n; ++row) {
            h = v(row, i + 1);
            v(row, i + 1) = s * v(row, i) + c * h;
            v(row, i) = c * v(row, i) - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

}  // namespace detail

inline EigenDecomposition dense_symmetric_eig(const RealMatrix& m) {
  if (m.rows != m.cols) throw std::invalid_argument("dense_symmetric_eig: matrix not square");
  const int n = m.rows;
  if (n == 0) return {};

  double max_abs = 0.0;
  double max_asym = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      max_abs = std::max(max_abs, std::abs(m(i, j)));
      max_asym = std::max(max_asym, std::abs(m(i, j) - m(j, i)));
    }
  if (max_asym > 1e-14 * std::max(max_abs, 1.0))
    throw std::invalid_argument("dense_symmetric_eig: matrix not symmetric");

  EigenDecomposition out;
  out.eigenvectors = m;
  out.eigenvalues.assign(std::size_t(n), 0.0);
  std::vector<double> e(std::size_t(n), 0.0);
  if (n == 1) {
    out.eigenvalues[0] = m(0, 0);
    out.eigenvectors(0, 0) = 1.0;
    return out;
  }
  detail::tred2(out.eigenvectors, out.eigenvalues, e);
  detail::tql2(out.eigenvectors, out.eigenvalues, e);

  std::vector<int> order(out.eigenvalues.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return out.eigenvalues[a] < out.eigenvalues[b]; });

  EigenDecomposition sorted;
  sorted.eigenvalues.resize(std::size_t(n));
  sorted.eigenvectors = RealMatrix(n, n);
  for (int j = 0; j < n; ++j) {
    sorted.eigenvalues[j] = out.eigenvalues[order[j]];
    for (int i = 0; i < n; ++i) sorted.eigenvectors(i, j) = out.eigenvectors(i, order[j]);
  }
  return sorted;
}

// U diag(exp(i lambda t)) U^T v, or exp(i lambda^2 t) when square is set.
inline std::vector<Complex> dense_evolve(const RealMatrix& m, const std::vector<Complex>& v, double t,
                                         bool square = false) {
  if (int(v.size()) != m.rows) throw std::invalid_argument("dense_evolve: shape mismatch");
  const EigenDecomposition eig = dense_symmetric_eig(m);
  const int n = m.rows;
  std::vector<Complex> y(std::size_t(n), Complex(0.0, 0.0));
  for (int j = 0; j < n; ++j) {
    Complex s(0.0, 0.0);
    for (int i = 0; i < n; ++i) s += eig.eigenvectors(i, j) * v[i];
    const double lam = eig.eigenvalues[j];
    y[j] = s * std::polar(1.0, (square ? lam * lam : lam) * t);
  }
  std::vector<Complex> out(std::size_t(n), Complex(0.0, 0.0));
  for (int i = 0; i < n; ++i) {
    Complex s(0.0, 0.0);
    for (int j = 0; j < n; ++j) s += eig.eigenvectors(i, j) * y[j];
    out[i] = s;
  }
  return out;
}

}  // namespace dimer
