#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dimer/coherent.hpp"
#include "dimer/dynamics.hpp"
#include "dimer/eigensystem.hpp"
#include "dimer/hamiltonian.hpp"
#include "dimer/oracle.hpp"
#include "dimer/report.hpp"

// Builders for the CLI output tables. Row order is fixed (ascending k,
// then m or alpha, then t) so repeated invocations are byte-identical.

namespace dimer {

inline Cell icell(int v) { return Cell(std::int64_t(v)); }

// Closed-form eigenvalues next to the dense-solver ones, with the gap.
inline OutputRecord spectrum_record(int k) {
  if (k < 0) throw std::invalid_argument("spectrum: k must be nonnegative");
  OutputRecord r;
  r.schema_name = "spectrum";
  r.columns = {"m", "eigenvalue", "oracle_eigenvalue", "residual"};
  const EigenDecomposition eig = dense_symmetric_eig(build_hopping_matrix(k).dense());
  for (int m = 0; m <= k; ++m) {
    const double oracle = eig.eigenvalues[m];
    const int closed = eigenvalue(k, m);
    r.rows.push_back({icell(m), icell(closed), Cell(oracle), Cell(std::abs(oracle - double(closed)))});
  }
  return r;
}

inline OutputRecord eigvec_record(int k, int m) {
  const int lam = eigenvalue(k, m);  // validates 0 <= m <= k
  OutputRecord r;
  r.schema_name = "eigvec";
  r.columns = {"alpha", "re_amp", "im_amp", "eigenvalue", "raw_norm_sq"};
  const BlockVector v = eigenvector_normalized(k, m);
  const double rn = raw_norm_sq(k, m);
  for (int a = 0; a <= k; ++a)
    r.rows.push_back({icell(a), Cell(v.amps[a].real()), Cell(v.amps[a].imag()), icell(lam), Cell(rn)});
  return r;
}

inline OutputRecord coherent_record(const CoherentParams& p, const TruncationPolicy& trunc) {
  OutputRecord r;
  r.schema_name = "coherent";
  r.columns = {"k", "alpha", "re_amp", "im_amp"};
  const FockVector v = coherent_state(p, trunc);
  for (const auto& [k, b] : v.blocks)
    for (int a = 0; a <= k; ++a)
      r.rows.push_back({icell(k), icell(a), Cell(b.amps[a].real()), Cell(b.amps[a].imag())});
  return r;
}

// Closed-form energy distribution next to the eigenbasis grouping, plus a
// footer row with the total retained mass on each route.
inline OutputRecord energy_dist_record(const CoherentParams& p, int alpha_min, int alpha_max,
                                       double series_epsilon, const TruncationPolicy& trunc) {
  OutputRecord r;
  r.schema_name = "energy_dist";
  r.columns = {"alpha", "p_closed", "p_numeric", "abs_diff"};
  const EnergyDistribution closed = energy_distribution_closed(p, alpha_min, alpha_max, series_epsilon);
  const EnergyDistribution numeric = energy_distribution_numeric(coherent_state(p, trunc));
  double closed_total = 0.0;
  double numeric_total = 0.0;
  for (int alpha = alpha_min; alpha <= alpha_max; ++alpha) {
    const double pc = closed.at(alpha);
    const double pn = numeric.at(alpha);
    closed_total += pc;
    numeric_total += pn;
    r.rows.push_back({icell(alpha), Cell(pc), Cell(pn), Cell(std::abs(pc - pn))});
  }
  r.rows.push_back({Cell(std::string("total")), Cell(closed_total), Cell(numeric_total),
                    Cell(std::abs(closed_total - numeric_total))});
  return r;
}

enum class Generator { h2, h };

// Autocorrelation trace <psi(0)|psi(t)> of the evolved coherent state,
// with the survival probability and the conserved energy expectation.
inline OutputRecord evolve_record(const CoherentParams& p, std::vector<double> times, Generator gen,
                                  const TruncationPolicy& trunc) {
  OutputRecord r;
  r.schema_name = "evolve";
  r.columns = {"t", "re_autocorr", "im_autocorr", "survival", "energy"};
  std::sort(times.begin(), times.end());
  const FockVector initial = coherent_state(p, trunc);
  for (double t : times) {
    const FockVector evolved = gen == Generator::h2 ? evolve_h2(initial, t) : evolve_h(initial, t);
    const Complex overlap = inner(initial, evolved);
    const double energy = inner(evolved, apply_hopping_full(evolved)).real();
    r.rows.push_back(
        {Cell(t), Cell(overlap.real()), Cell(overlap.imag()), Cell(std::norm(overlap)), Cell(energy)});
  }
  return r;
}

inline OutputRecord cat_check_record(const CoherentParams& p, std::vector<double> times,
                                     const TruncationPolicy& trunc) {
  OutputRecord r;
  r.schema_name = "cat_check";
  r.columns = {"t", "fidelity_cat", "fidelity_period", "fidelity_signflip", "tail_mass"};
  std::sort(times.begin(), times.end());
  for (const EvolutionReport& rep : cat_check(p, times, trunc))
    r.rows.push_back({Cell(rep.time), Cell(rep.fidelity_cat), Cell(rep.fidelity_period),
                      Cell(rep.fidelity_signflip), Cell(rep.tail_mass)});
  return r;
}

}  // namespace dimer
