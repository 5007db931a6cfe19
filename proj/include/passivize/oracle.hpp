#ifndef PASSIVIZE_ORACLE_HPP
#define PASSIVIZE_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "passivize/system.hpp"

namespace passivize {

struct OracleResult {
  double best_distance;
  UnitaryOperator best_unitary;
  int restarts_used;
  bool converged;
  double spread;  // max - min over restart finals, reported honestly
};

/// Ground truth for dist(1, passivizing set): minimizes ||Log(U P_sigma V)||
/// over the isotropy groups of the observable and the state, parametrized by
/// Hermitian commutant generators, over all enumerated passivizing
/// permutations. Derivative-free multistart descent; deterministic per seed.
OracleResult numeric_min_distance(const SystemSpec& spec, int restarts, std::uint64_t seed);

struct PassivizationCheck {
  bool bandwidth_saturated;
  bool reaches_passive;
  bool respects_qsl;
  bool all() const { return bandwidth_saturated && reaches_passive && respects_qsl; }
};

/// Checks tr H^2 = omega^2, that e^{-iTH} diag(p) e^{iTH} is passive, and
/// T >= tau_qsl - tolerance.
PassivizationCheck verify_passivization_run(const HermitianOperator& h,
                                            const SystemSpec& spec, double total_time);

struct OptimalityCheck {
  bool incompatible_with_observable;  // Pi H Pi = 0 on observable eigenspaces
  bool parallel_transporting;         // Pi H Pi = 0 on state eigenspaces
  bool traceless;
  bool all() const {
    return incompatible_with_observable && parallel_transporting && traceless;
  }
};

OptimalityCheck verify_optimality_properties(const HermitianOperator& h,
                                             const SystemSpec& spec);

/// True iff tr(H(t)^2) stays within tolerance of its t=0 value at all samples.
bool constant_bandwidth(const Generator& h, double total_time, int samples);

/// Per-basis-vector trajectory length T <k|H^2|k>^{1/2}. The squared lengths
/// sum to T^2 tr H^2, and when the run passivizes at least delta of them
/// reach a quarter circle.
std::vector<double> trajectory_lengths(const HermitianOperator& h, const SystemSpec& spec,
                                       double total_time);

}  // namespace passivize

#endif
