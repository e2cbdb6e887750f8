#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dimer/eigensystem.hpp"
#include "dimer/fock.hpp"

// Coherent states of the dimer, in two equivalent parametrizations:
//
//   |w,z>_0 = e^(-(|w|^2+|z|^2)/2) exp(w a_2^+) exp(z a_3^+) |vacuum>
//   |w,z>   = e^(-(|w|^2+|z|^2)/2) exp(w c^+)   exp(z d^+)   |vacuum>
//
// related by the involution (w, z) <-> ((w+z)/sqrt2, (w-z)/sqrt2). In the
// c/d convention the coefficient over the normalized eigenvector (k, m)
// is the prefactor times w^m z^(k-m) / sqrt(m!(k-m)!), so the particle
// number is Poisson with mean |w|^2 + |z|^2 and the energy measurement
// distribution has the closed form implemented below.

namespace dimer {

class truncation_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Convention { cd, a23 };

struct CoherentParams {
  Complex w{0.0, 0.0};
  Complex z{0.0, 0.0};
  Convention convention = Convention::cd;
};

struct TruncationPolicy {
  double tail_epsilon = 1e-12;  // maximum discarded probability mass
  int k_max = 512;
};

// The change of variables is its own inverse; only the convention tag flips.
inline CoherentParams convert_params(const CoherentParams& p) {
  constexpr double inv = 1.0 / std::numbers::sqrt2;
  CoherentParams out;
  out.w = (p.w + p.z) * inv;
  out.z = (p.w - p.z) * inv;
  out.convention = p.convention == Convention::cd ? Convention::a23 : Convention::cd;
  return out;
}

namespace detail {

// g[j] = x^j / sqrt(j!), grown by one multiplicative step per level so no
// factorial or large power is ever formed.
inline void extend_amp_table(std::vector<Complex>& g, const Complex& x, int up_to) {
  if (g.empty()) g.push_back(Complex(1.0, 0.0));
  for (int j = int(g.size()); j <= up_to; ++j) g.push_back(g[j - 1] * x / std::sqrt(double(j)));
}

}  // namespace detail

// Truncated coherent state: blocks are added in ascending k until the
// retained squared norm reaches 1 - tail_epsilon. The c/d convention goes
// through the eigenbasis; the a_2/a_3 convention is a direct product
// expansion. Keeping the two routes separate lets them check each other.
inline FockVector coherent_state(const CoherentParams& p, const TruncationPolicy& trunc = {}) {
  if (trunc.k_max < 0 || trunc.tail_epsilon <= 0.0)
    throw std::invalid_argument("coherent_state: bad truncation policy");
  const double lambda = std::norm(p.w) + std::norm(p.z);
  const double prefactor = std::exp(-0.5 * lambda);

  FockVector out;
  std::vector<Complex> gw;
  std::vector<Complex> gz;
  double retained = 0.0;
  for (int k = 0;; ++k) {
    if (k > trunc.k_max)
      throw truncation_error("coherent_state: k_max reached with tail mass above tail_epsilon");
    detail::extend_amp_table(gw, p.w, k);
    detail::extend_amp_table(gz, p.z, k);

    BlockVector block;
    if (p.convention == Convention::cd) {
      EigenCoeffs c;
      c.coeffs.resize(std::size_t(k) + 1);
      for (int m = 0; m <= k; ++m) c.coeffs[m] = prefactor * gw[m] * gz[k - m];
      block = from_eigenbasis(c);
    } else {
      block = BlockVector::zero(k);
      for (int a = 0; a <= k; ++a) block.amps[a] = prefactor * gw[a] * gz[k - a];
    }
    retained += block.norm_sq();
    out.blocks.emplace(k, std::move(block));
    if (1.0 - retained <= trunc.tail_epsilon) break;
  }
  return out;
}

// <H> = |w|^2 - |z|^2 in the c/d convention; other parametrizations are
// converted first.
inline double expected_energy_closed(const CoherentParams& p) {
  const CoherentParams q = p.convention == Convention::cd ? p : convert_params(p);
  return std::norm(q.w) - std::norm(q.z);
}

struct EnergyDistribution {
  std::map<int, double> entries;  // energy value -> probability

  double total() const {
    double s = 0.0;
    for (const auto& [alpha, prob] : entries) s += prob;
    return s;
  }
  double at(int alpha) const {
    auto it = entries.find(alpha);
    return it == entries.end() ? 0.0 : it->second;
  }
};

// Closed form for the probability of measuring energy alpha:
//
//   P(alpha) = e^(-|w|^2-|z|^2) b^(2|alpha|) sum_n |wz|^(2n) / (n! (n+|alpha|)!)
//
// with b = |w| for alpha >= 0 and b = |z| for alpha < 0 (c/d convention).
// Each series is summed by the term recurrence
//   term_(n+1) = term_n |wz|^2 / ((n+1)(n+1+|alpha|))
// and truncated once the next term drops below series_epsilon times the
// partial sum.
inline EnergyDistribution energy_distribution_closed(const CoherentParams& p, int alpha_min, int alpha_max,
                                                     double series_epsilon = 1e-16) {
  if (alpha_min > alpha_max) throw std::invalid_argument("energy_distribution_closed: empty range");
  if (series_epsilon <= 0.0) throw std::invalid_argument("energy_distribution_closed: bad series epsilon");
  const CoherentParams q = p.convention == Convention::cd ? p : convert_params(p);
  const double w2 = std::norm(q.w);
  const double z2 = std::norm(q.z);
  const double x = w2 * z2;  // |wz|^2
  const double scale = std::exp(-w2 - z2);

  EnergyDistribution out;
  for (int alpha = alpha_min; alpha <= alpha_max; ++alpha) {
    const int a = std::abs(alpha);
    const double base = alpha >= 0 ? w2 : z2;
    double term = 1.0;  // b^(2a) / a! via cumulative product
    for (int j = 1; j <= a; ++j) term *= base / double(j);
    double sum = term;
    for (int n = 1; term > 0.0; ++n) {
      term *= x / (double(n) * double(n + a));
      if (term < series_epsilon * sum) break;
      sum += term;
    }
    out.entries[alpha] = scale * sum;
  }
  return out;
}

// Grouping route: squared eigenbasis amplitudes accumulated by their
// eigenvalue 2m - k. Sums to the squared norm of the input.
inline EnergyDistribution energy_distribution_numeric(const FockVector& v) {
  EnergyDistribution out;
  for (const auto& [k, b] : v.blocks) {
    if (b.empty()) continue;
    const EigenCoeffs c = to_eigenbasis_direct(b);
    for (int m = 0; m <= k; ++m) out.entries[2 * m - k] += std::norm(c.coeffs[m]);
  }
  return out;
}

}  // namespace dimer
