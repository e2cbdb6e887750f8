#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dimer/coherent.hpp"
#include "dimer/eigensystem.hpp"
#include "dimer/fock.hpp"

// Phase evolution in the eigenbasis. Under exp(i H^2 t) the coefficient
// at (k, m) picks up exp(i (2m-k)^2 t); every eigenvalue is an integer,
// so the flow is 2pi-periodic, flips the sign of the coherent amplitudes
// at odd multiples of pi, and at quarter period satisfies
//
//   |w,z,t+pi/2> = (e^(i pi/4)/sqrt2) |w,z,t> + (e^(-i pi/4)/sqrt2) |-w,-z,t>
//
// because exp(i n^2 pi/2) = (e^(i pi/4) + (-1)^n e^(-i pi/4))/sqrt2. A
// coherent state therefore periodically evolves into a cat state.

namespace dimer {

namespace detail {

template <typename PhaseFn>
FockVector evolve_phases(const FockVector& v, PhaseFn&& phase_of) {
  FockVector out;
  for (const auto& [k, b] : v.blocks) {
    if (b.empty()) continue;
    EigenCoeffs c = to_eigenbasis_direct(b);
    for (int m = 0; m <= k; ++m) c.coeffs[m] *= phase_of(2 * m - k);
    out.blocks.emplace(k, from_eigenbasis(c));
  }
  return out;
}

}  // namespace detail

inline FockVector evolve_h2(const FockVector& v, double t) {
  return detail::evolve_phases(
      v, [t](int lam) { return std::polar(1.0, double(lam) * double(lam) * t); });
}

// Linear-in-H phases; keeps coherent states coherent and never produces a
// cat state. Useful as a baseline next to the H^2 flow.
inline FockVector evolve_h(const FockVector& v, double t) {
  return detail::evolve_phases(v, [t](int lam) { return std::polar(1.0, double(lam) * t); });
}

inline double fidelity(const FockVector& u, const FockVector& v) {
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) throw std::domain_error("fidelity: zero vector");
  return std::abs(inner(u, v)) / (nu * nv);
}

// Right-hand side of the quarter-period identity: the two-branch cat built
// from evolved coherent states.
inline FockVector predicted_cat(const CoherentParams& p, double t, const TruncationPolicy& trunc = {}) {
  constexpr double quarter = std::numbers::pi / 4.0;
  constexpr double inv = 1.0 / std::numbers::sqrt2;
  CoherentParams flipped = p;
  flipped.w = -p.w;
  flipped.z = -p.z;

  FockVector plus = evolve_h2(coherent_state(p, trunc), t);
  plus *= std::polar(inv, quarter);
  FockVector minus = evolve_h2(coherent_state(flipped, trunc), t);
  minus *= std::polar(inv, -quarter);
  plus += minus;
  return plus;
}

struct EvolutionReport {
  double time = 0.0;
  double fidelity_cat = 0.0;
  double fidelity_period = 0.0;
  double fidelity_signflip = 0.0;
  double tail_mass = 0.0;
};

// For each time, checks the three exact identities of the H^2 flow on the
// coherent state |w,z>: the quarter-period cat, 2pi periodicity, and the
// sign flip at pi. All fidelities are 1 up to truncation.
inline std::vector<EvolutionReport> cat_check(const CoherentParams& p, const std::vector<double>& times,
                                              const TruncationPolicy& trunc = {}) {
  constexpr double pi = std::numbers::pi;
  CoherentParams flipped = p;
  flipped.w = -p.w;
  flipped.z = -p.z;
  const FockVector cs = coherent_state(p, trunc);
  const FockVector cs_flipped = coherent_state(flipped, trunc);
  const double tail = 1.0 - cs.norm_sq();

  std::vector<EvolutionReport> out;
  out.reserve(times.size());
  for (double t : times) {
    EvolutionReport r;
    r.time = t;
    r.fidelity_cat = fidelity(evolve_h2(cs, t + pi / 2.0), predicted_cat(p, t, trunc));
    r.fidelity_period = fidelity(evolve_h2(cs, t + 2.0 * pi), evolve_h2(cs, t));
    r.fidelity_signflip = fidelity(evolve_h2(cs, t + pi), evolve_h2(cs_flipped, t));
    r.tail_mass = tail;
    out.push_back(r);
  }
  return out;
}

}  // namespace dimer
