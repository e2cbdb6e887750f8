#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "dimer/coherent.hpp"
#include "dimer/hamiltonian.hpp"
#include "test_support.hpp"

using namespace dimer;
using testsup::diff_norm;

namespace {

double poisson_pmf(double lambda, int k) {
  double p = std::exp(-lambda);
  for (int j = 1; j <= k; ++j) p *= lambda / double(j);
  return p;
}

}  // namespace

TEST_CASE("convert_params_examples") {
  const CoherentParams p{{1.0, 0.0}, {1.0, 0.0}, Convention::cd};
  const CoherentParams q = convert_params(p);
  CHECK(q.convention == Convention::a23);
  CHECK(q.w.real() == Catch::Approx(std::sqrt(2.0)));
  CHECK(std::abs(q.z) < 1e-15);

  const CoherentParams zero = convert_params({{0, 0}, {0, 0}, Convention::cd});
  CHECK(std::abs(zero.w) == 0.0);
  CHECK(std::abs(zero.z) == 0.0);
}

TEST_CASE("convert_params_is_involutive") {
  testsup::Rng rng(51);
  for (int rep = 0; rep < 20; ++rep) {
    CoherentParams p;
    p.w = 2.0 * rng.complex_box();
    p.z = 2.0 * rng.complex_box();
    const CoherentParams back = convert_params(convert_params(p));
    CHECK(back.convention == p.convention);
    CHECK(std::abs(back.w - p.w) < 1e-15 * (1.0 + std::abs(p.w)));
    CHECK(std::abs(back.z - p.z) < 1e-15 * (1.0 + std::abs(p.z)));
  }
}

TEST_CASE("coherent_state_vacuum") {
  const FockVector v = coherent_state({{0, 0}, {0, 0}, Convention::cd});
  REQUIRE(v.block(0) != nullptr);
  CHECK(v.block(0)->amps[0] == Complex(1.0, 0.0));
  CHECK(v.norm_sq() == Catch::Approx(1.0));
  CHECK(v.blocks.size() == 1);
}

TEST_CASE("single_mode_state_has_poisson_blocks") {
  const FockVector v = coherent_state({{1.0, 0.0}, {0.0, 0.0}, Convention::cd});
  for (const auto& [k, b] : v.blocks)
    CHECK(b.norm_sq() == Catch::Approx(poisson_pmf(1.0, k)).margin(1e-13));
  CHECK(v.norm_sq() == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("annihilators_have_coherent_eigenvectors") {
  const CoherentParams p{{1.0, 0.0}, {0.5, -0.3}, Convention::cd};
  const FockVector v = coherent_state(p);

  FockVector cw = apply_c_full(v);
  FockVector scaled = v;
  scaled *= p.w;
  CHECK(diff_norm(cw, scaled) < 1e-5);

  FockVector dz = apply_d_full(v);
  FockVector scaled_z = v;
  scaled_z *= p.z;
  CHECK(diff_norm(dz, scaled_z) < 1e-5);
}

TEST_CASE("truncation_failure_when_cap_too_small") {
  CHECK_THROWS_AS(coherent_state({{3.0, 0.0}, {0.0, 0.0}, Convention::cd}, {1e-12, 5}),
                  truncation_error);
  CHECK_THROWS_AS(coherent_state({{0, 0}, {0, 0}, Convention::cd}, {0.0, 512}), std::invalid_argument);
}

TEST_CASE("coherent_norm_across_grid") {
  for (double wr : {0.0, 0.9, 2.0})
    for (double zi : {0.0, 1.1, 2.0}) {
      const FockVector v = coherent_state({{wr, 0.4}, {0.2, zi}, Convention::cd});
      CHECK(std::abs(v.norm_sq() - 1.0) <= 1e-12);
    }
}

TEST_CASE("conventions_agree_blockwise") {
  testsup::Rng rng(52);
  for (int rep = 0; rep < 6; ++rep) {
    CoherentParams p;
    p.w = 1.4 * rng.complex_box();
    p.z = 1.4 * rng.complex_box();
    p.convention = Convention::cd;
    const FockVector a = coherent_state(p);
    const FockVector b = coherent_state(convert_params(p));
    CHECK(diff_norm(a, b) < 1e-10);
  }
}

TEST_CASE("expected_energy_closed_form") {
  CHECK(expected_energy_closed({{1.0, 0.0}, {0.0, 0.0}, Convention::cd}) == 1.0);
  CHECK(expected_energy_closed({{0.7, -0.4}, {0.7, -0.4}, Convention::cd}) == 0.0);
  CHECK(expected_energy_closed({{0.5, 0.5}, {1.0, 0.0}, Convention::cd}) == Catch::Approx(-0.5));
  // a23 parameters convert first: <H> = 2 Re(conj(w0) z0)
  CHECK(expected_energy_closed({{1.0, 0.0}, {1.0, 0.0}, Convention::a23}) == Catch::Approx(2.0));
}

TEST_CASE("expected_energy_matches_numeric") {
  const CoherentParams grid[] = {
      {{0.5, 0.5}, {1.0, 0.0}, Convention::cd},
      {{1.8, 0.0}, {0.0, 1.2}, Convention::cd},
      {{0.3, -1.0}, {0.9, 0.4}, Convention::a23},
  };
  for (const CoherentParams& p : grid) {
    const FockVector v = coherent_state(p);
    const double numeric = inner(v, apply_hopping_full(v)).real();
    CHECK(numeric == Catch::Approx(expected_energy_closed(p)).margin(1e-8));
  }
}

TEST_CASE("energy_distribution_vacuum") {
  const EnergyDistribution d = energy_distribution_closed({{0, 0}, {0, 0}, Convention::cd}, -3, 3);
  CHECK(d.at(0) == Catch::Approx(1.0));
  for (int alpha : {-3, -2, -1, 1, 2, 3}) CHECK(d.at(alpha) == 0.0);
}

TEST_CASE("energy_distribution_single_mode_is_poisson") {
  const double w2 = 1.0;
  const EnergyDistribution d = energy_distribution_closed({{1.0, 0.0}, {0.0, 0.0}, Convention::cd}, -4, 8);
  for (int alpha = -4; alpha < 0; ++alpha) CHECK(d.at(alpha) == 0.0);
  for (int alpha = 0; alpha <= 8; ++alpha)
    CHECK(d.at(alpha) == Catch::Approx(poisson_pmf(w2, alpha)).margin(1e-14));
}

TEST_CASE("energy_distribution_symmetric_under_swap") {
  const CoherentParams p{{1.2, 0.4}, {0.3, -0.8}, Convention::cd};
  const CoherentParams swapped{p.z, p.w, Convention::cd};
  const EnergyDistribution a = energy_distribution_closed(p, -12, 12);
  const EnergyDistribution b = energy_distribution_closed(swapped, -12, 12);
  for (int alpha = -12; alpha <= 12; ++alpha)
    CHECK(a.at(alpha) == Catch::Approx(b.at(-alpha)).margin(1e-15));
}

TEST_CASE("energy_distribution_sums_to_one") {
  const CoherentParams grid[] = {
      {{1.0, 0.0}, {1.0, 0.0}, Convention::cd},
      {{1.5, 0.0}, {0.0, 1.5}, Convention::cd},
      {{0.4, 0.2}, {0.1, -0.5}, Convention::cd},
  };
  for (const CoherentParams& p : grid) {
    const double reach = std::pow(std::abs(p.w) + std::abs(p.z), 2.0) + 10.0 * std::sqrt(std::norm(p.w) + std::norm(p.z) + 1.0);
    const int r = int(std::ceil(reach));
    CHECK(energy_distribution_closed(p, -r, r).total() == Catch::Approx(1.0).margin(1e-8));
  }
}

TEST_CASE("numeric_grouping_on_eigenvectors") {
  const EnergyDistribution d =
      energy_distribution_numeric(FockVector::single(eigenvector_normalized(3, 2)));
  CHECK(d.at(1) == Catch::Approx(1.0));
  CHECK(d.total() == Catch::Approx(1.0));

  const EnergyDistribution half = energy_distribution_numeric(FockVector::single(BlockVector::basis({1, 0})));
  CHECK(half.at(-1) == Catch::Approx(0.5));
  CHECK(half.at(1) == Catch::Approx(0.5));
}

TEST_CASE("closed_form_matches_numeric_grouping") {
  const CoherentParams grid[] = {
      {{1.0, 0.0}, {1.0, 0.0}, Convention::cd},
      {{0.9, 0.6}, {0.0, -1.1}, Convention::cd},
      {{1.5, 0.0}, {1.4, 0.3}, Convention::cd},
  };
  for (const CoherentParams& p : grid) {
    const EnergyDistribution numeric = energy_distribution_numeric(coherent_state(p));
    const EnergyDistribution closed = energy_distribution_closed(p, -30, 30);
    for (int alpha = -30; alpha <= 30; ++alpha)
      CHECK(std::abs(closed.at(alpha) - numeric.at(alpha)) < 1e-8);
  }
}
