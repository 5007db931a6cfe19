#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "passivize/battery.hpp"
#include "passivize/oracle.hpp"
#include "test_util.hpp"

using namespace passivize;
constexpr double pi = std::numbers::pi;

namespace {

// Qutrit battery with p1 = p2 < p3 and strict energies.
BatterySpec family_battery() { return BatterySpec({0.0, 0.7, 1.0}, {0.2, 0.2, 0.6}, 1.0); }

UnitaryOperator random_passivizing(const SystemSpec& spec, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> angle(-pi, pi);
  const int n = spec.dim();
  Matrix ua = Matrix::Zero(n, n), wp = Matrix::Zero(n, n);
  // random elements of both isotropy groups, block by degeneracy group
  for (const auto* groups : {&spec.a_groups(), &spec.p_groups()}) {
    Matrix& target = (groups == &spec.a_groups()) ? ua : wp;
    for (const auto& g : *groups) {
      const int d = static_cast<int>(g.size());
      Matrix h(d, d);
      for (int i = 0; i < d; ++i) h(i, i) = angle(gen);
      for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
          h(i, j) = Complex(angle(gen), angle(gen));
          h(j, i) = std::conj(h(i, j));
        }
      auto [vals, vecs] = eig_hermitian(h);
      CVector ph(d);
      for (int k = 0; k < d; ++k) ph[k] = std::exp(Complex(0, vals[k]));
      Matrix block = vecs * ph.asDiagonal() * vecs.adjoint();
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) target(g[i], g[j]) = block(i, j);
    }
  }
  Matrix p_op = permutation_operator(canonical_passivizing_permutation(spec)).matrix();
  return UnitaryOperator(ua * p_op * wp);
}

}  // namespace

TEST_CASE("ergotropy") {
  CHECK(ergotropy(BatterySpec({0, 1}, {0.7, 0.3}, 1.0)) == doctest::Approx(0.0));
  BatterySpec qubit({0.2, 1.4}, {0.3, 0.7}, 1.0);
  CHECK(ergotropy(qubit) == doctest::Approx((1.4 - 0.2) * (0.7 - 0.3)));

  SUBCASE("independent of the passivizing permutation") {
    auto gen = ptest::rng(17);
    for (int trial = 0; trial < 15; ++trial) {
      SystemSpec spec = ptest::random_spec(2 + trial % 4, gen, 0.4);
      BatterySpec batt(std::vector<double>(spec.a().data(), spec.a().data() + spec.dim()),
                       std::vector<double>(spec.p().data(), spec.p().data() + spec.dim()),
                       1.0);
      const double w = ergotropy(batt);
      for (const auto& sigma : enumerate_passivizing_permutations(spec)) {
        double via_sigma = 0.0;
        for (int k = 0; k < spec.dim(); ++k)
          via_sigma += spec.a()[k] * (spec.p()[k] - spec.p()[sigma(k)]);
        CHECK(via_sigma == doctest::Approx(w).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("power bounds") {
  SUBCASE("maximally active closed form") {
    BatterySpec batt({0.0, 0.3, 0.9, 1.2}, {0.1, 0.2, 0.3, 0.4}, 1.0);
    PowerBound pb = power_upper_bound(batt, PowerScenario::maximally_active());
    const int m = 2;
    double w = 0.0;
    for (int k = 0; k < 4; ++k)
      w += batt.eps()[k] * (batt.sys.p()[k] - batt.sys.p()[3 - k]);
    CHECK(pb.power == doctest::Approx((1.0 / pi) * std::sqrt(2.0 / m) * w));
    CHECK(pb.tau_kind == "exact");
  }
  SUBCASE("non-degenerate closed form") {
    BatterySpec batt({0.0, 1.0, 2.0}, {0.3, 0.2, 0.5}, 1.0);
    PowerBound pb = power_upper_bound(batt, PowerScenario::nondegenerate());
    const double w = ergotropy(batt);
    CHECK(pb.power == doctest::Approx((1.0 / pi) * std::sqrt(3.0 / (3.0 - 1.0 / 3.0)) * w));
  }
  SUBCASE("assisted scaling") {
    BatterySpec batt({0.0, 1.0}, {0.3, 0.7}, 1.0);
    PowerBound pb = power_upper_bound(batt, PowerScenario::assisted(4));
    CHECK(pb.power ==
          doctest::Approx((2.0 / pi) * std::sqrt(4.0 / 2.0) * ergotropy(batt)));
  }
  SUBCASE("collective advantage for mixed qubits") {
    BatterySpec batt({0.0, 1.0}, {0.3, 0.7}, 1.0);
    for (int n : {2, 3, 4, 6}) {
      PowerBound pb = power_upper_bound(batt, PowerScenario::collective(n));
      REQUIRE(pb.advantage);
      const double dn = double(delta_n_closed(ActiveKind::qubit_mixed, n));
      CHECK(*pb.advantage == doctest::Approx(std::sqrt(n * std::pow(2.0, n) / dn)));
    }
  }
  SUBCASE("no constructed discharge beats the generic bound") {
    BatterySpec batt({0.0, 0.4, 1.0}, {0.1, 0.35, 0.55}, 1.0);
    PowerBound pb = power_upper_bound(batt, PowerScenario::generic());
    auto built = build_time_optimal_hamiltonian(batt.sys, HamiltonianMethod::involution);
    REQUIRE(built);
    const double w = ergotropy(batt);
    for (double ramp : {0.5, 0.1, 0.02}) {
      DischargeSchedule sched = smooth_discharge_schedule(built->h, built->tau, ramp, batt);
      CHECK(w / sched.duration() <= pb.power + 1e-12);
    }
  }
}

TEST_CASE("smooth discharge schedule") {
  BatterySpec batt({0.0, 1.0, 2.0}, {0.3, 0.2, 0.5}, 1.0);
  auto built = build_time_optimal_hamiltonian(batt.sys, HamiltonianMethod::nondegenerate);
  REQUIRE(built);

  SUBCASE("bandwidth precondition") {
    HermitianOperator half{0.5 * built->h.matrix()};
    CHECK_THROWS_AS(smooth_discharge_schedule(half, built->tau, 0.1, batt),
                    BandwidthMismatch);
  }

  for (double ramp : {0.5, 0.1, 0.02}) {
    CAPTURE(ramp);
    DischargeSchedule sched = smooth_discharge_schedule(built->h, built->tau, ramp, batt);
    // the duration overhead is exactly the ramp time
    CHECK(sched.duration() == built->tau + ramp);
    CHECK(sched.u(sched.duration()) == doctest::Approx(built->tau).epsilon(1e-14));

    // profile: vanishes outside, stays within the budget inside
    CHECK(sched.potential(-0.5).norm() == 0.0);
    CHECK(sched.potential(sched.duration() + 0.1).norm() == 0.0);
    double max_bw = 0.0;
    for (int s = 0; s <= 200; ++s) {
      const double t = sched.duration() * s / 200;
      max_bw = std::max(max_bw, sched.potential(t).squaredNorm());
      CHECK(sched.u_prime(t) >= 0.0);
      CHECK(sched.u_prime(t) <= 1.0);
    }
    CHECK(max_bw <= 1.0 + 1e-12);

    // the final state equals the conjugation by the implemented unitary and
    // is passive
    DensityOperator rho0 = DensityOperator::diagonal(batt.sys.p());
    const int steps = 60000;
    DensityOperator rho_final =
        von_neumann_evolve(sched.lab_generator(), rho0, sched.duration(), steps);
    Matrix predicted = conjugate(sched.implemented_unitary().matrix(), rho0.matrix());
    CHECK((rho_final.matrix() - predicted).norm() < 1e-7);
    CHECK(is_passive(rho_final, batt.sys, 1e-7));
  }
}

TEST_CASE("interaction picture check") {
  BatterySpec batt({0.0, 1.0, 2.0}, {0.3, 0.2, 0.5}, 1.0);
  auto built = build_time_optimal_hamiltonian(batt.sys, HamiltonianMethod::nondegenerate);
  REQUIRE(built);
  DischargeSchedule sched = smooth_discharge_schedule(built->h, built->tau, 0.2, batt);

  SUBCASE("the potential vanishes identically outside the window") {
    for (double t : {-1.0, -1e-9, sched.duration(), sched.duration() + 2.0}) {
      CHECK(sched.potential(t).squaredNorm() == 0.0);
      CHECK(sched.interaction_potential(t).squaredNorm() == 0.0);
    }
  }
  SUBCASE("a valid schedule passes") {
    CHECK(interaction_picture_check(sched, batt, 100, 20000));
  }
  SUBCASE("a schedule that stops halfway fails") {
    DischargeSchedule broken(built->h, built->tau / 2, 0.2, batt.internal_hamiltonian());
    CHECK_FALSE(interaction_picture_check(broken, batt, 50, 20000));
  }
}

TEST_CASE("energy transfer variance") {
  SUBCASE("passive battery, identity process") {
    BatterySpec batt({0.0, 1.0}, {0.7, 0.3}, 1.0);
    CHECK(energy_transfer_variance(UnitaryOperator{Matrix::Identity(2, 2)}, batt) ==
          doctest::Approx(0.0));
  }
  SUBCASE("non-degenerate batteries have process-independent variance") {
    auto gen = ptest::rng(33);
    BatterySpec batt({0.0, 0.5, 1.2, 2.0}, {0.3, 0.1, 0.2, 0.4}, 1.0);
    const double reference =
        energy_transfer_variance(random_passivizing(batt.sys, gen), batt);
    double lo = reference, hi = reference;
    for (int trial = 0; trial < 100; ++trial) {
      const double v = energy_transfer_variance(random_passivizing(batt.sys, gen), batt);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    CHECK(hi - lo < 1e-9);
  }
  SUBCASE("both expressions agree on random passivizing pairs") {
    auto gen = ptest::rng(35);
    for (int trial = 0; trial < 200; ++trial) {
      SystemSpec spec = ptest::random_spec(2 + trial % 3, gen, 0.35);
      BatterySpec batt(std::vector<double>(spec.a().data(), spec.a().data() + spec.dim()),
                       std::vector<double>(spec.p().data(), spec.p().data() + spec.dim()),
                       1.0);
      // throws FormulaMismatch if the probability route and the moment route
      // ever disagree
      CHECK_NOTHROW(energy_transfer_variance(random_passivizing(spec, gen), batt));
    }
  }
  SUBCASE("marginals of the jump probabilities") {
    auto gen = ptest::rng(36);
    BatterySpec batt({0.0, 0.5, 1.2}, {0.2, 0.3, 0.5}, 1.0);
    UnitaryOperator u = random_passivizing(batt.sys, gen);
    Matrix rho = DensityOperator::diagonal(batt.sys.p()).matrix();
    const int n = 3;
    double mean = 0.0, total = 0.0;
    for (int k = 0; k < n; ++k) {
      Matrix pk = Matrix::Zero(n, n);
      pk(k, k) = 1.0;
      double row_sum = 0.0;
      for (int l = 0; l < n; ++l) {
        Matrix pl = Matrix::Zero(n, n);
        pl(l, l) = 1.0;
        const double plk =
            (pl * u.matrix() * pk * rho * pk * u.matrix().adjoint()).trace().real();
        row_sum += plk;
        total += plk;
        mean += (batt.eps()[k] - batt.eps()[l]) * plk;
      }
      CHECK(row_sum == doctest::Approx(batt.sys.p()[k]).epsilon(1e-10));
    }
    CHECK(total == doctest::Approx(1.0));
    CHECK(mean == doctest::Approx(ergotropy(batt)).epsilon(1e-9));
  }
  SUBCASE("non-passivizing unitaries are rejected") {
    BatterySpec batt({0.0, 1.0}, {0.3, 0.7}, 1.0);
    CHECK_THROWS_AS(energy_transfer_variance(UnitaryOperator{Matrix::Identity(2, 2)}, batt),
                    NotPassivizing);
  }
}

TEST_CASE("qutrit passivizing family") {
  BatterySpec batt = family_battery();
  auto gen = ptest::rng(90);
  std::uniform_real_distribution<double> angle(-pi, pi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  SUBCASE("always unitary and passivizing") {
    for (int trial = 0; trial < 50; ++trial) {
      std::array<double, 4> phases{angle(gen), angle(gen), angle(gen), angle(gen)};
      UnitaryOperator u = qutrit_passivizing_family(unit(gen), phases, batt);
      Matrix rho = DensityOperator::diagonal(batt.sys.p()).matrix();
      CHECK(is_passive(DensityOperator{conjugate(u.matrix(), rho)}, batt.sys));
    }
  }
  SUBCASE("a = 1 with zero phases permutes the basis") {
    UnitaryOperator u = qutrit_passivizing_family(1.0, {0, 0, 0, 0}, batt);
    Matrix expected(3, 3);
    expected << 0, 0, 1, 1, 0, 0, 0, -1, 0;
    CHECK((u.matrix() - expected).norm() < 1e-14);
  }
  SUBCASE("variance is independent of the phases") {
    double lo = 1e300, hi = -1e300;
    for (int trial = 0; trial < 50; ++trial) {
      std::array<double, 4> phases{angle(gen), angle(gen), angle(gen), angle(gen)};
      const double v =
          energy_transfer_variance(qutrit_passivizing_family(0.37, phases, batt), batt);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    CHECK(hi - lo < 1e-9);
  }
  SUBCASE("variance decreases monotonically in the mixing parameter") {
    double prev = 1e300;
    for (int i = 0; i <= 10; ++i) {
      const double a = i / 10.0;
      const double v =
          energy_transfer_variance(qutrit_passivizing_family(a, {0, 0, 0, 0}, batt), batt);
      CHECK(v < prev);
      prev = v;
    }
  }
  SUBCASE("endpoint gap matches the cross-term coefficient") {
    // from the moment expression the only a-dependence is
    // -2 p1 eps2 a (eps3 - eps2)
    const double v0 =
        energy_transfer_variance(qutrit_passivizing_family(0.0, {0, 0, 0, 0}, batt), batt);
    const double v1 =
        energy_transfer_variance(qutrit_passivizing_family(1.0, {0, 0, 0, 0}, batt), batt);
    const double p1 = batt.sys.p()[0], e2 = batt.eps()[1], e3 = batt.eps()[2];
    CHECK(v0 - v1 == doctest::Approx(2.0 * p1 * e2 * (e3 - e2)).epsilon(1e-10));
  }
  SUBCASE("wrong spectra are rejected") {
    BatterySpec wrong({0.0, 0.7, 1.0}, {0.2, 0.3, 0.5}, 1.0);
    CHECK_THROWS_AS(qutrit_passivizing_family(0.5, {0, 0, 0, 0}, wrong), SpectrumMismatch);
  }
}
