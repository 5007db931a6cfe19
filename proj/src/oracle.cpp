#include "passivize/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <numbers>

#include "minimize.hpp"
#include "passivize/bounds.hpp"

namespace passivize {

namespace {
constexpr double pi = std::numbers::pi;
}

OracleResult numeric_min_distance(const SystemSpec& spec, int restarts, std::uint64_t seed) {
  const int n = spec.dim();
  if (n > 6) throw DimensionTooLarge("oracle minimization supports dimension <= 6");
  if (restarts < 1) throw InvalidSpec("restart count must be positive");

  const detail::CommutantChart chart_a(n, spec.a_groups());
  const detail::CommutantChart chart_p(n, spec.p_groups());
  const int dim_a = chart_a.param_count();
  const int dim_p = chart_p.param_count();

  // All passivizing permutations parametrize the same manifold, so every
  // sigma's minimum equals the set distance; scanning a few cycle-type
  // representatives only diversifies the optimizer's starting landscape.
  std::vector<Permutation> sigmas;
  {
    std::set<std::vector<int>> seen_types;
    for (const auto& sigma : enumerate_passivizing_permutations(spec)) {
      auto lengths = cycle_decomposition(sigma).lengths;
      std::sort(lengths.begin(), lengths.end());
      if (seen_types.insert(lengths).second || sigmas.size() < 2) sigmas.push_back(sigma);
      if (sigmas.size() >= 6) break;
    }
  }

  double best = 0.0;
  std::vector<double> best_x;
  const Permutation* best_sigma = nullptr;
  double spread = 0.0;
  int reproduced = 0;
  bool first = true;
  for (const auto& sigma : sigmas) {
    const Matrix p_op = permutation_operator(sigma).matrix();
    detail::Objective f = [&](const std::vector<double>& z) {
      return log_norm(chart_a.unitary(z, 0) * p_op * chart_p.unitary(z, dim_a));
    };
    auto res = detail::multistart_minimize(f, dim_a + dim_p, restarts, seed, pi);
    if (first || res.best < best) {
      best = res.best;
      best_x = res.best_x;
      best_sigma = &sigma;
      spread = res.spread;
      reproduced = res.reproduced;
      first = false;
    }
  }

  Matrix u_best = chart_a.unitary(best_x, 0) * permutation_operator(*best_sigma).matrix() *
                  chart_p.unitary(best_x, dim_a);

  const bool converged = !(spread > 1e-5 && reproduced < 3);
  if (!converged)
    throw NoConvergence("restart finals spread beyond 1e-5 without reproduction");
  return OracleResult{best, UnitaryOperator(std::move(u_best)), restarts, converged,
                      spread};
}

PassivizationCheck verify_passivization_run(const HermitianOperator& h,
                                            const SystemSpec& spec, double total_time) {
  PassivizationCheck out{};
  const double budget = spec.omega() * spec.omega();
  out.bandwidth_saturated = std::abs(bandwidth(h) - budget) <= tol::num * rel_scale(budget);
  DensityOperator rho0 = DensityOperator::diagonal(spec.p());
  UnitaryOperator evolution = expm_skew(h, total_time);
  DensityOperator rho_final(conjugate(evolution.matrix(), rho0.matrix()));
  out.reaches_passive = is_passive(rho_final, spec);
  out.respects_qsl = total_time >= tau_qsl(spec) - tol::num;
  return out;
}

OptimalityCheck verify_optimality_properties(const HermitianOperator& h,
                                             const SystemSpec& spec) {
  OptimalityCheck out{};
  const double scale = rel_scale(h.matrix().norm());
  auto annihilated = [&](const std::vector<std::vector<int>>& groups) {
    for (const auto& g : groups) {
      double block_norm = 0.0;
      for (int i : g)
        for (int j : g) block_norm += std::norm(h.matrix()(i, j));
      if (std::sqrt(block_norm) > tol::num * scale) return false;
    }
    return true;
  };
  out.incompatible_with_observable = annihilated(spec.a_groups());
  out.parallel_transporting = annihilated(spec.p_groups());
  out.traceless = std::abs(h.matrix().trace()) <= tol::num * scale;
  return out;
}

bool constant_bandwidth(const Generator& h, double total_time, int samples) {
  const double reference = h(0.0).squaredNorm();
  for (int s = 0; s <= samples; ++s) {
    const double t = total_time * s / samples;
    if (std::abs(h(t).squaredNorm() - reference) > tol::num * rel_scale(reference))
      return false;
  }
  return true;
}

std::vector<double> trajectory_lengths(const HermitianOperator& h, const SystemSpec& spec,
                                       double total_time) {
  const int n = spec.dim();
  if (h.dim() != n) throw DimensionMismatch("Hamiltonian dimension mismatch");
  const Matrix h2 = h.matrix() * h.matrix();
  std::vector<double> lengths(n);
  double sq_sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double speed_sq = h2(k, k).real();
    lengths[k] = total_time * std::sqrt(std::max(0.0, speed_sq));
    sq_sum += speed_sq;
  }
  const double tr_h2 = bandwidth(h);
  if (std::abs(sq_sum - tr_h2) > tol::num * rel_scale(tr_h2))
    throw FormulaMismatch("squared speeds do not sum to the bandwidth");
  return lengths;
}

}  // namespace passivize
