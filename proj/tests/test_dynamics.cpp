#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "dimer/dynamics.hpp"
#include "dimer/hamiltonian.hpp"
#include "dimer/oracle.hpp"
#include "test_support.hpp"

using namespace dimer;
using testsup::diff_norm;

namespace {
constexpr double pi = std::numbers::pi;

FockVector random_fock(testsup::Rng& rng, int kmax) {
  FockVector v;
  for (int k = 0; k <= kmax; ++k) v.set_block(rng.block(k));
  return v;
}
}  // namespace

TEST_CASE("evolve_identity_at_t0") {
  // only the eigenbasis round-trip separates psi(0) from psi
  testsup::Rng rng(61);
  const FockVector v = random_fock(rng, 9);
  CHECK(diff_norm(evolve_h2(v, 0.0), v) < 1e-12 * v.norm());
  CHECK(diff_norm(evolve_h(v, 0.0), v) < 1e-12 * v.norm());
}

TEST_CASE("evolve_h2_periodic_with_2pi") {
  testsup::Rng rng(62);
  const FockVector v = random_fock(rng, 12);
  for (double t : {0.0, 0.3, 1.7}) {
    CHECK(diff_norm(evolve_h2(v, t + 2.0 * pi), evolve_h2(v, t)) < 1e-10 * v.norm());
  }
  const CoherentParams p{{1.0, 0.0}, {0.0, 0.7}, Convention::cd};
  const FockVector cs = coherent_state(p);
  CHECK(diff_norm(evolve_h2(cs, 2.0 * pi), cs) < 1e-10);
}

TEST_CASE("evolve_h2_sign_flip_at_pi") {
  const CoherentParams p{{1.0, 0.2}, {0.5, -0.5}, Convention::cd};
  const CoherentParams flipped{-p.w, -p.z, Convention::cd};
  for (double t : {0.0, 0.4}) {
    CHECK(diff_norm(evolve_h2(coherent_state(p), t + pi), evolve_h2(coherent_state(flipped), t)) <
          1e-10);
  }
}

TEST_CASE("evolve_h2_unitary_and_group_law") {
  testsup::Rng rng(63);
  const FockVector v = random_fock(rng, 10);
  const FockVector a = evolve_h2(v, 0.37);
  CHECK(a.norm() == Catch::Approx(v.norm()).epsilon(1e-12));
  CHECK(diff_norm(evolve_h2(a, 1.21), evolve_h2(v, 0.37 + 1.21)) < 1e-10 * v.norm());
}

TEST_CASE("evolve_h_rotates_coherent_parameters") {
  const CoherentParams p{{0.9, 0.3}, {0.0, -1.1}, Convention::cd};
  const FockVector cs = coherent_state(p);

  const CoherentParams at_pi{-p.w, -p.z, Convention::cd};
  CHECK(diff_norm(evolve_h(cs, pi), coherent_state(at_pi)) < 1e-10);

  const Complex i_unit(0.0, 1.0);
  const CoherentParams at_half{i_unit * p.w, -i_unit * p.z, Convention::cd};
  CHECK(diff_norm(evolve_h(cs, pi / 2.0), coherent_state(at_half)) < 1e-10);
}

TEST_CASE("fidelity_basics") {
  const FockVector v = coherent_state({{1.0, 0.0}, {0.5, 0.0}, Convention::cd});
  CHECK(fidelity(v, v) == Catch::Approx(1.0));

  const FockVector e0 = FockVector::single(eigenvector_normalized(2, 0));
  const FockVector e1 = FockVector::single(eigenvector_normalized(2, 1));
  CHECK(fidelity(e0, e1) < 1e-12);

  FockVector zero;
  CHECK_THROWS_AS(fidelity(zero, v), std::domain_error);
}

TEST_CASE("fidelity_of_opposite_coherent_states") {
  // |<w|-w>| = exp(-2|w|^2) = exp(-8) for w = 2
  const FockVector plus = coherent_state({{2.0, 0.0}, {0.0, 0.0}, Convention::cd});
  const FockVector minus = coherent_state({{-2.0, 0.0}, {0.0, 0.0}, Convention::cd});
  CHECK(fidelity(plus, minus) == Catch::Approx(std::exp(-8.0)).margin(1e-8));
}

TEST_CASE("predicted_cat_simple_cases") {
  // both branches coincide at w = z = 0, the phases sum to 1
  const FockVector trivial = predicted_cat({{0, 0}, {0, 0}, Convention::cd}, 0.8);
  CHECK(diff_norm(trivial, FockVector::vacuum()) < 1e-12);

  // at t = 0 the two branches are the coherent states themselves
  const CoherentParams p{{2.0, 0.0}, {0.0, 0.0}, Convention::cd};
  FockVector expected = coherent_state(p);
  expected *= std::polar(1.0 / std::sqrt(2.0), pi / 4.0);
  FockVector minus = coherent_state({-p.w, -p.z, Convention::cd});
  minus *= std::polar(1.0 / std::sqrt(2.0), -pi / 4.0);
  expected += minus;
  CHECK(diff_norm(predicted_cat(p, 0.0), expected) < 1e-12);
  CHECK(expected.norm() == Catch::Approx(1.0).epsilon(1e-10));  // exact identity keeps unit norm
}

TEST_CASE("quarter_period_evolution_is_the_cat") {
  const CoherentParams grid[] = {
      {{1.0, 0.0}, {0.5, 0.0}, Convention::cd},
      {{1.5, 0.0}, {0.0, 1.5}, Convention::cd},
      {{0.0, 2.0}, {1.3, -0.4}, Convention::cd},
  };
  for (const CoherentParams& p : grid)
    for (double t : {0.0, 0.3, 1.1}) {
      const FockVector lhs = evolve_h2(coherent_state(p), t + pi / 2.0);
      CHECK(diff_norm(lhs, predicted_cat(p, t)) < 1e-8);
    }
}

TEST_CASE("cat_check_reports") {
  const std::vector<EvolutionReport> r1 = cat_check({{1.0, 0.0}, {0.5, 0.0}, Convention::cd}, {0.0});
  REQUIRE(r1.size() == 1);
  CHECK(r1[0].fidelity_cat == Catch::Approx(1.0).margin(1e-8));
  CHECK(r1[0].fidelity_period == Catch::Approx(1.0).margin(1e-8));
  CHECK(r1[0].fidelity_signflip == Catch::Approx(1.0).margin(1e-8));
  CHECK(r1[0].tail_mass < 1e-11);

  for (const EvolutionReport& r : cat_check({{0, 0}, {0, 0}, Convention::cd}, {0.0, 0.9})) {
    CHECK(r.fidelity_cat == Catch::Approx(1.0));
    CHECK(r.fidelity_period == Catch::Approx(1.0));
    CHECK(r.fidelity_signflip == Catch::Approx(1.0));
  }

  for (const EvolutionReport& r :
       cat_check({{1.5, 0.0}, {0.0, 1.5}, Convention::cd}, {0.0, 0.3, 1.1})) {
    CHECK(r.fidelity_cat == Catch::Approx(1.0).margin(1e-8));
    CHECK(r.fidelity_period == Catch::Approx(1.0).margin(1e-8));
    CHECK(r.fidelity_signflip == Catch::Approx(1.0).margin(1e-8));
  }
}

TEST_CASE("evolution_matches_dense_oracle_per_block") {
  testsup::Rng rng(64);
  for (int k = 0; k <= 12; ++k) {
    const BlockVector v = rng.block(k);
    for (double t : {0.45, 2.2}) {
      const FockVector evolved = evolve_h2(FockVector::single(v), t);
      const std::vector<Complex> expect = dense_evolve(build_hopping_matrix(k).dense(), v.amps, t, true);
      double dn = 0.0;
      for (int a = 0; a <= k; ++a) dn += std::norm(evolved.block(k)->amps[a] - expect[a]);
      CHECK(std::sqrt(dn) < 1e-8 * v.norm());
    }
  }
}
