#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "dimer/coherent.hpp"
#include "dimer/dynamics.hpp"
#include "dimer/eigensystem.hpp"
#include "dimer/hamiltonian.hpp"
#include "dimer/oracle.hpp"
#include "dimer/records.hpp"
#include "dimer/report.hpp"

// Built-in invariant suite behind the `selftest` subcommand. Every check
// reports the worst observed deviation against a fixed tolerance; random
// states come from a fixed-seed generator so runs are byte-identical.

namespace dimer {

struct CheckResult {
  std::string name;
  double worst = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SelftestOptions {
  int k_cap = 20;
  double inject = 0.0;  // added to every measured deviation; forces failures when nonzero
};

namespace detail {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }
  double symmetric() { return 2.0 * uniform() - 1.0; }
  Complex complex_box() {
    const double re = symmetric();
    const double im = symmetric();
    return {re, im};
  }

  BlockVector block(int k) {
    BlockVector v = BlockVector::zero(k);
    for (int a = 0; a <= k; ++a) v.amps[a] = complex_box();
    return v;
  }

  RealMatrix symmetric_matrix(int n) {
    RealMatrix m(n, n);
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

inline std::vector<int> sample_blocks(int cap) {
  std::vector<int> ks{0, 1, 2, 3, 5, 8, 13, cap};
  ks.erase(std::remove_if(ks.begin(), ks.end(), [cap](int k) { return k > cap; }), ks.end());
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  return ks;
}

inline double diff_norm(const BlockVector& a, const BlockVector& b) {
  BlockVector d = a;
  d -= b;
  return d.norm();
}

inline double diff_norm(const FockVector& a, const FockVector& b) {
  FockVector d = a;
  d -= b;
  return d.norm();
}

}  // namespace detail

inline std::vector<CheckResult> run_selftest(const SelftestOptions& opt = {}) {
  using detail::diff_norm;
  constexpr double pi = std::numbers::pi;
  const int cap = std::max(opt.k_cap, 2);
  std::vector<CheckResult> results;

  auto check = [&](const std::string& name, double tolerance, double worst) {
    CheckResult r;
    r.name = name;
    r.worst = worst + opt.inject;
    r.tolerance = tolerance;
    r.pass = r.worst <= tolerance;
    results.push_back(r);
  };

  detail::SplitMix64 rng(0x5eedf0cd1e57ull);

  // ladder operator algebra
  {
    double worst = 0.0;
    for (int k : detail::sample_blocks(cap)) {
      const BlockVector v = rng.block(k);
      for (Site p : {Site::p2, Site::p3})
        for (Site q : {Site::p2, Site::p3}) {
          BlockVector lhs = apply_annihilate(p, apply_create(q, v));
          lhs -= apply_create(q, apply_annihilate(p, v));
          if (p == q) lhs -= v;
          worst = std::max(worst, lhs.norm() / v.norm());
        }
    }
    check("bccr_commutators", 1e-12, worst);
  }
  {
    double worst = 0.0;
    for (int k : detail::sample_blocks(cap)) {
      const BlockVector v = rng.block(k);
      const double n = v.norm();
      BlockVector r1 = apply_c(apply_d_dagger(v));
      r1 -= apply_d_dagger(apply_c(v));
      worst = std::max(worst, r1.norm() / n);
      BlockVector r2 = apply_c(apply_c_dagger(v));
      r2 -= apply_c_dagger(apply_c(v));
      r2 -= v;
      worst = std::max(worst, r2.norm() / n);
      BlockVector r3 = apply_d(apply_d_dagger(v));
      r3 -= apply_d_dagger(apply_d(v));
      r3 -= v;
      worst = std::max(worst, r3.norm() / n);
      if (k >= 2) {
        BlockVector r4 = apply_c(apply_d(v));
        r4 -= apply_d(apply_c(v));
        worst = std::max(worst, r4.norm() / n);
      }
    }
    check("cd_commutators", 1e-12, worst);
  }
  {
    double worst = 0.0;
    for (int k : detail::sample_blocks(cap - 1)) {
      const BlockVector u = rng.block(k);
      const BlockVector v = rng.block(k + 1);
      for (Site p : {Site::p2, Site::p3}) {
        const Complex a = inner(apply_create(p, u), v);
        const Complex b = inner(u, apply_annihilate(p, v));
        worst = std::max(worst, std::abs(a - b) / (u.norm() * v.norm()));
      }
    }
    check("create_annihilate_adjoint", 1e-12, worst);
  }
  {
    double worst = 0.0;
    for (int k = 0; k <= cap; ++k)
      for (int a = 0; a <= k; ++a) {
        const BasisState s{a, k - a};
        const BlockVector v = BlockVector::basis(s);
        BlockVector n2 = apply_create(Site::p2, apply_annihilate(Site::p2, v));
        n2 -= double(a) * v;
        BlockVector n3 = apply_create(Site::p3, apply_annihilate(Site::p3, v));
        n3 -= double(k - a) * v;
        worst = std::max(worst, std::max(n2.norm(), n3.norm()));
      }
    check("number_operator_diagonal", 1e-12, worst);
  }

  // hopping Hamiltonian
  {
    double worst = 0.0;
    double worst_cd = 0.0;
    double worst_sym = 0.0;
    for (int k : detail::sample_blocks(cap)) {
      const BlockVector v = rng.block(k);
      const BlockVector u = rng.block(k);
      const BlockVector hv = apply_hopping(v);
      std::vector<Complex> dense = matvec(build_hopping_matrix(k).dense(), v.amps);
      double dn = 0.0;
      for (int a = 0; a <= k; ++a) dn += std::norm(hv.amps[a] - dense[a]);
      worst = std::max(worst, std::sqrt(dn) / v.norm());
      worst_cd = std::max(worst_cd, diff_norm(hv, apply_hopping_via_cd(v)) / v.norm());
      const Complex s1 = inner(u, hv);
      const Complex s2 = inner(apply_hopping(u), v);
      worst_sym = std::max(worst_sym, std::abs(s1 - s2) / (u.norm() * v.norm()));
    }
    check("hopping_matches_dense", 1e-12, worst);
    check("hopping_cd_route", 1e-12, worst_cd);
    check("hopping_symmetric", 1e-12, worst_sym);
  }
  {
    double worst = 0.0;
    double worst_h2 = 0.0;
    double worst_n2 = 0.0;
    for (int k : detail::sample_blocks(std::min(cap, 12))) {
      const BlockVector v = rng.block(k);
      const BlockVector hhv = apply_hopping(apply_hopping(v));
      const RealMatrix h = build_hopping_matrix(k).dense();
      std::vector<Complex> dense = matvec(matmul(h, h), v.amps);
      double dn = 0.0;
      for (int a = 0; a <= k; ++a) dn += std::norm(hhv.amps[a] - dense[a]);
      worst = std::max(worst, std::sqrt(dn) / v.norm());
      worst_h2 = std::max(worst_h2, diff_norm(hhv, apply_hopping_squared_normal_ordered(v)) / v.norm());
      const BlockVector nnv = apply_number(apply_number(v));
      worst_n2 = std::max(worst_n2, diff_norm(nnv, apply_number_squared_normal_ordered(v)) / v.norm());
    }
    check("hopping_squared_dense", 1e-12, worst);
    check("h_squared_normal_ordered", 1e-12, worst_h2);
    check("n_squared_normal_ordered", 1e-12, worst_n2);
  }

  // closed-form eigensystem against the dense solver
  {
    double worst = 0.0;
    for (int k = 0; k <= cap; ++k) {
      const EigenDecomposition eig = dense_symmetric_eig(build_hopping_matrix(k).dense());
      for (int m = 0; m <= k; ++m)
        worst = std::max(worst, std::abs(eig.eigenvalues[m] - double(eigenvalue(k, m))));
    }
    check("spectrum_integer", 1e-10, worst);
  }
  {
    double worst = 0.0;
    double worst_norm = 0.0;
    for (int k = 0; k <= cap; ++k)
      for (int m = 0; m <= k; ++m) {
        const BlockVector v = eigenvector_normalized(k, m);
        BlockVector res = apply_hopping(v);
        res -= double(eigenvalue(k, m)) * v;
        worst = std::max(worst, res.norm());
        worst_norm = std::max(worst_norm, std::abs(v.norm() - 1.0));
      }
    check("eigenvector_residual", 1e-10, worst);
    check("eigenvector_unit_norm", 1e-12, worst_norm);
  }
  {
    double worst = 0.0;
    for (int k = 0; k <= std::min(cap, 20); ++k)
      for (int m = 0; m <= k; ++m) {
        const double expected = raw_norm_sq(k, m);
        worst = std::max(worst, std::abs(eigenvector_raw(k, m).norm_sq() - expected) / expected);
      }
    check("raw_norm_factorial", 1e-10, worst);
  }
  {
    double worst = 0.0;
    for (int k : detail::sample_blocks(std::min(cap, 16))) {
      const RealMatrix g = gram(eigenbasis_matrix(k));
      worst = std::max(worst, max_abs_diff(g, RealMatrix::identity(k + 1)));
    }
    check("eigenvector_orthogonality", 1e-10, worst);
  }
  {
    double worst = 0.0;
    for (int k : detail::sample_blocks(cap)) {
      const BlockVector v = rng.block(k);
      BlockVector rc = apply_hopping(apply_c_dagger(v));
      rc -= apply_c_dagger(apply_hopping(v));
      rc -= apply_c_dagger(v);
      worst = std::max(worst, rc.norm() / apply_c_dagger(v).norm());
      BlockVector rd = apply_hopping(apply_d_dagger(v));
      rd -= apply_d_dagger(apply_hopping(v));
      rd += apply_d_dagger(v);
      worst = std::max(worst, rd.norm() / apply_d_dagger(v).norm());
    }
    check("ladder_commutation", 1e-12, worst);
  }
  {
    double worst = 0.0;
    double worst_split = 0.0;
    for (int k = 1; k <= cap; ++k) {
      worst = std::max(worst, max_abs_diff(gram(immersion_matrix(k)), RealMatrix::identity(k + 1)));
      const BlockVector v = rng.block(k);
      const double split = apply_ck(v).norm_sq() + apply_dk(v).norm_sq();
      worst_split = std::max(worst_split, std::abs(split - v.norm_sq()) / v.norm_sq());
    }
    check("immersion_orthonormal", 1e-12, worst);
    check("ck_dk_norm_split", 1e-12, worst_split);
  }
  {
    double worst = 0.0;
    double worst_rt = 0.0;
    for (int k : detail::sample_blocks(cap)) {
      for (int rep = 0; rep < 4; ++rep) {
        const BlockVector v = rng.block(k);
        const EigenCoeffs direct = to_eigenbasis_direct(v);
        const EigenCoeffs cascade = to_eigenbasis_cascade(v);
        double dn = 0.0;
        for (int m = 0; m <= k; ++m) dn += std::norm(direct.coeffs[m] - cascade.coeffs[m]);
        worst = std::max(worst, std::sqrt(dn) / v.norm());
        worst_rt = std::max(worst_rt, diff_norm(from_eigenbasis(direct), v) / v.norm());
      }
    }
    check("cascade_matches_direct", 1e-10, worst);
    check("eigenbasis_round_trip", 1e-10, worst_rt);
  }

  // coherent states
  const std::vector<CoherentParams> params{
      {Complex(0.0, 0.0), Complex(0.0, 0.0), Convention::cd},
      {Complex(1.0, 0.0), Complex(0.5, 0.0), Convention::cd},
      {Complex(0.0, 0.8), Complex(0.3, -0.2), Convention::cd},
      {Complex(1.5, 0.0), Complex(0.0, 1.5), Convention::cd},
  };
  const TruncationPolicy trunc{1e-12, 512};
  {
    double worst_norm = 0.0;
    double worst_eig = 0.0;
    double worst_conv = 0.0;
    double worst_energy = 0.0;
    for (const CoherentParams& p : params) {
      const FockVector cs = coherent_state(p, trunc);
      worst_norm = std::max(worst_norm, std::abs(cs.norm_sq() - 1.0));

      FockVector cw = apply_c_full(cs);
      FockVector wcs = cs;
      wcs *= p.w;
      worst_eig = std::max(worst_eig, diff_norm(cw, wcs));
      FockVector dz = apply_d_full(cs);
      FockVector zcs = cs;
      zcs *= p.z;
      worst_eig = std::max(worst_eig, diff_norm(dz, zcs));

      worst_conv = std::max(worst_conv, diff_norm(cs, coherent_state(convert_params(p), trunc)));
      worst_energy = std::max(
          worst_energy, std::abs(inner(cs, apply_hopping_full(cs)).real() - expected_energy_closed(p)));
    }
    check("coherent_norm", 1e-12, worst_norm);
    check("annihilator_eigenrelation", 1e-5, worst_eig);
    check("convention_equivalence", 1e-10, worst_conv);
    check("coherent_energy", 1e-8, worst_energy);
  }
  {
    double worst = 0.0;
    double worst_total = 0.0;
    for (const CoherentParams& p : params) {
      const int reach = int(std::ceil(std::norm(p.w) + std::norm(p.z))) + 30;
      const EnergyDistribution closed = energy_distribution_closed(p, -reach, reach);
      const EnergyDistribution numeric = energy_distribution_numeric(coherent_state(p, trunc));
      for (int alpha = -reach; alpha <= reach; ++alpha)
        worst = std::max(worst, std::abs(closed.at(alpha) - numeric.at(alpha)));
      worst_total = std::max(worst_total, std::abs(closed.total() - 1.0));
    }
    check("energy_distribution_match", 1e-8, worst);
    check("energy_distribution_total", 1e-8, worst_total);
  }

  // dynamics
  {
    double worst_unit = 0.0;
    double worst_group = 0.0;
    double worst_period = 0.0;
    double worst_flip = 0.0;
    double worst_cat = 0.0;
    for (const CoherentParams& p : params) {
      const FockVector cs = coherent_state(p, trunc);
      const double t0 = 0.7;
      const FockVector a = evolve_h2(cs, t0);
      worst_unit = std::max(worst_unit, std::abs(a.norm() - cs.norm()));
      worst_group = std::max(worst_group, diff_norm(evolve_h2(a, 0.4), evolve_h2(cs, t0 + 0.4)));
      worst_period = std::max(worst_period, diff_norm(evolve_h2(cs, t0 + 2.0 * pi), a));
      CoherentParams flipped = p;
      flipped.w = -p.w;
      flipped.z = -p.z;
      worst_flip = std::max(
          worst_flip, diff_norm(evolve_h2(cs, t0 + pi), evolve_h2(coherent_state(flipped, trunc), t0)));
      worst_cat = std::max(worst_cat, diff_norm(evolve_h2(cs, t0 + pi / 2.0), predicted_cat(p, t0, trunc)));
    }
    check("evolve_unitary", 1e-12, worst_unit);
    check("evolve_group_law", 1e-10, worst_group);
    check("evolve_periodicity", 1e-10, worst_period);
    check("evolve_sign_flip", 1e-10, worst_flip);
    check("cat_identity", 1e-8, worst_cat);
  }
  {
    double worst = 0.0;
    for (int k : detail::sample_blocks(std::min(cap, 12))) {
      const BlockVector v = rng.block(k);
      const FockVector evolved = evolve_h2(FockVector::single(v), 0.9);
      const std::vector<Complex> expect = dense_evolve(build_hopping_matrix(k).dense(), v.amps, 0.9, true);
      const BlockVector* got = evolved.block(k);
      double dn = 0.0;
      for (int a = 0; a <= k; ++a) dn += std::norm(got->amps[a] - expect[a]);
      worst = std::max(worst, std::sqrt(dn) / v.norm());
    }
    check("evolve_matches_oracle", 1e-8, worst);
  }

  // dense oracle contracts
  {
    double worst_res = 0.0;
    double worst_orth = 0.0;
    double worst_trace = 0.0;
    std::vector<RealMatrix> mats;
    for (int n : {2, 5, 16, 33}) mats.push_back(rng.symmetric_matrix(n));
    for (int k : detail::sample_blocks(cap)) mats.push_back(build_hopping_matrix(k).dense());
    for (const RealMatrix& m : mats) {
      const int n = m.rows;
      const EigenDecomposition eig = dense_symmetric_eig(m);
      double frob = 0.0;
      for (double x : m.data) frob += x * x;
      frob = std::sqrt(frob);
      if (frob == 0.0) frob = 1.0;
      double trace = 0.0;
      double sum = 0.0;
      for (int j = 0; j < n; ++j) {
        trace += m(j, j);
        sum += eig.eigenvalues[j];
        double res = 0.0;
        for (int i = 0; i < n; ++i) {
          double mv = 0.0;
          for (int l = 0; l < n; ++l) mv += m(i, l) * eig.eigenvectors(l, j);
          const double r = mv - eig.eigenvalues[j] * eig.eigenvectors(i, j);
          res += r * r;
        }
        worst_res = std::max(worst_res, std::sqrt(res) / frob);
      }
      worst_orth = std::max(worst_orth, max_abs_diff(gram(eig.eigenvectors), RealMatrix::identity(n)));
      worst_trace = std::max(worst_trace, std::abs(trace - sum) / frob);
    }
    check("oracle_residual", 1e-12, worst_res);
    check("oracle_orthogonality", 1e-12, worst_orth);
    check("oracle_trace", 1e-10, worst_trace);
  }

  return results;
}

inline OutputRecord selftest_record(const std::vector<CheckResult>& results) {
  OutputRecord r;
  r.schema_name = "selftest";
  r.columns = {"check", "worst", "tolerance", "status"};
  for (const CheckResult& c : results)
    r.rows.push_back({Cell(c.name), Cell(c.worst), Cell(c.tolerance),
                      Cell(std::string(c.pass ? "pass" : "fail"))});
  return r;
}

inline bool selftest_all_passed(const std::vector<CheckResult>& results) {
  for (const CheckResult& c : results)
    if (!c.pass) return false;
  return true;
}

}  // namespace dimer
