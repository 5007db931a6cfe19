#include <doctest.h>

#include <cmath>
#include <numbers>

#include "passivize/bounds.hpp"
#include "passivize/oracle.hpp"
#include "test_util.hpp"

using namespace passivize;
constexpr double pi = std::numbers::pi;

TEST_CASE("numeric_min_distance closed-form targets") {
  SUBCASE("3-cycle qutrit") {
    OracleResult res = numeric_min_distance(ptest::qutrit_cycle_spec(), 8, 2024);
    CHECK(res.best_distance == doctest::Approx(pi * std::sqrt(8.0) / 3.0).epsilon(1e-6));
    CHECK(res.converged);
    // the witness unitary passivizes
    Matrix rho = DensityOperator::diagonal(ptest::qutrit_cycle_spec().p()).matrix();
    CHECK(is_passive(DensityOperator{conjugate(res.best_unitary.matrix(), rho)},
                     ptest::qutrit_cycle_spec(), 1e-5));
  }
  SUBCASE("bivalent observables reach the QSL") {
    auto gen = ptest::rng(7001);
    std::uniform_real_distribution<double> u01(0.05, 1.0);
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<double> p(4);
      double sum = 0.0;
      for (auto& v : p) sum += (v = u01(gen));
      for (auto& v : p) v /= sum;
      SystemSpec spec({0, 0, 1, 1}, p, 1.0);
      OracleResult res = numeric_min_distance(spec, 8, 31 + trial);
      CHECK(res.best_distance ==
            doctest::Approx(pi * std::sqrt(double(discrepancy(spec))) / 2.0).epsilon(1e-6));
    }
  }
  SUBCASE("passive specs sit at distance zero") {
    OracleResult res = numeric_min_distance(SystemSpec({0, 1}, {0.7, 0.3}, 1.0), 4, 5);
    CHECK(res.best_distance == doctest::Approx(0.0));
  }
  SUBCASE("dimension guard") {
    std::vector<double> a(7), p(7, 1.0 / 7);
    for (int k = 0; k < 7; ++k) a[k] = k;
    CHECK_THROWS_AS(numeric_min_distance(SystemSpec(a, p, 1.0), 4, 1), DimensionTooLarge);
  }
}

TEST_CASE("oracle is deterministic under a fixed seed") {
  SystemSpec spec = ptest::qutrit_cycle_spec();
  OracleResult r1 = numeric_min_distance(spec, 6, 99);
  OracleResult r2 = numeric_min_distance(spec, 6, 99);
  CHECK(r1.best_distance == r2.best_distance);
  CHECK(r1.spread == r2.spread);
  CHECK((r1.best_unitary.matrix() - r2.best_unitary.matrix()).norm() == 0.0);
}

TEST_CASE("oracle sits between the QSL and the cycle-length bound") {
  auto gen = ptest::rng(7777);
  for (int trial = 0; trial < 8; ++trial) {
    SystemSpec spec = ptest::random_spec(2 + trial % 4, gen, 0.3);
    OracleResult res = numeric_min_distance(spec, 6, 1000 + trial);
    CHECK(res.best_distance >= tau_qsl(spec) * spec.omega() - 1e-6);
    CHECK(res.best_distance <=
          tau_upper_from_permutation(canonical_passivizing_permutation(spec), spec, true) *
                  spec.omega() +
              1e-6);
  }
}

TEST_CASE("verify_passivization_run") {
  SystemSpec spec({0, 1, 2, 3}, {0.1, 0.2, 0.3, 0.4}, 1.0);
  auto built = build_time_optimal_hamiltonian(spec, HamiltonianMethod::maximally_active);
  REQUIRE(built);
  SUBCASE("the optimal run passes every check") {
    PassivizationCheck check = verify_passivization_run(built->h, spec, built->tau);
    CHECK(check.bandwidth_saturated);
    CHECK(check.reaches_passive);
    CHECK(check.respects_qsl);
    CHECK(check.all());
  }
  SUBCASE("half the time leaves coherence behind") {
    PassivizationCheck check = verify_passivization_run(built->h, spec, built->tau / 2);
    CHECK(check.bandwidth_saturated);
    CHECK_FALSE(check.reaches_passive);
  }
  SUBCASE("a rescaled Hamiltonian misses the budget") {
    HermitianOperator half{0.5 * built->h.matrix()};
    PassivizationCheck check = verify_passivization_run(half, spec, built->tau);
    CHECK_FALSE(check.bandwidth_saturated);
  }
}

TEST_CASE("verify_optimality_properties") {
  SUBCASE("the qutrit construction annihilates both eigenspace families") {
    SystemSpec spec = ptest::qutrit_cycle_spec();
    auto built = build_time_optimal_hamiltonian(spec, HamiltonianMethod::nondegenerate);
    REQUIRE(built);
    OptimalityCheck check = verify_optimality_properties(built->h, spec);
    CHECK(check.all());
  }
  SUBCASE("the pair construction annihilates both families") {
    SystemSpec spec = ptest::example8_spec();
    auto built = build_time_optimal_hamiltonian(spec, HamiltonianMethod::involution);
    REQUIRE(built);
    CHECK(verify_optimality_properties(built->h, spec).all());
  }
  SUBCASE("a diagonal entry breaks the observable-side condition") {
    SystemSpec spec = ptest::qutrit_cycle_spec();
    Matrix h = Matrix::Zero(3, 3);
    h(0, 0) = 1.0;
    OptimalityCheck check = verify_optimality_properties(HermitianOperator{h}, spec);
    CHECK_FALSE(check.incompatible_with_observable);
    CHECK_FALSE(check.traceless);
  }
}

TEST_CASE("constant_bandwidth") {
  auto gen = ptest::rng(3);
  Matrix h = ptest::random_hermitian(3, gen);
  CHECK(constant_bandwidth([&](double) { return h; }, 2.0, 50));
  CHECK_FALSE(constant_bandwidth([&](double t) { return (1.0 + t) * h; }, 2.0, 50));
}

TEST_CASE("trajectory_lengths") {
  SUBCASE("zero Hamiltonian") {
    SystemSpec spec({0, 1}, {0.3, 0.7}, 1.0);
    auto lengths = trajectory_lengths(HermitianOperator{Matrix::Zero(2, 2)}, spec, 3.0);
    CHECK(lengths == std::vector<double>{0.0, 0.0});
  }
  SUBCASE("maximally active run: delta quarter circles, the rest frozen") {
    SystemSpec spec({0, 1, 2, 3, 4}, {0.1, 0.15, 0.2, 0.25, 0.3}, 1.0);
    auto built = build_time_optimal_hamiltonian(spec, HamiltonianMethod::maximally_active);
    REQUIRE(built);
    auto lengths = trajectory_lengths(built->h, spec, built->tau);
    int quarter = 0, frozen = 0;
    for (double len : lengths) {
      if (std::abs(len - pi / 2) < 1e-12) quarter++;
      if (len == 0.0) frozen++;
    }
    CHECK(quarter == discrepancy(spec));
    CHECK(frozen == 5 - discrepancy(spec));
  }
  SUBCASE("3-cycle run: uniform speeds summing to the bandwidth") {
    SystemSpec spec = ptest::qutrit_cycle_spec();
    auto built = build_time_optimal_hamiltonian(spec, HamiltonianMethod::nondegenerate);
    REQUIRE(built);
    auto lengths = trajectory_lengths(built->h, spec, built->tau);
    double sq = 0.0;
    for (double len : lengths) {
      CHECK(len == doctest::Approx(built->tau / std::sqrt(3.0)));
      sq += len * len;
    }
    CHECK(sq / (built->tau * built->tau) == doctest::Approx(bandwidth(built->h)));
  }
}
