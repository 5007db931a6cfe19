#ifndef PASSIVIZE_BOUNDS_HPP
#define PASSIVIZE_BOUNDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "passivize/system.hpp"

namespace passivize {

enum class ExactMethod { nondegenerate, involution, decomposition, oracle };

std::string to_string(ExactMethod m);

/// Named collection of times, all in units of 1/omega. tau_qsl <= tau_exact
/// <= tau_upper holds whenever tau_exact is present.
struct BoundReport {
  double tau_qsl = 0.0;
  double tau_upper = 0.0;
  std::optional<Permutation> upper_permutation;
  std::optional<double> tau_exact;
  std::optional<ExactMethod> exact_method;
  bool numerical = false;  // tau_exact involves a numerically minimized block
  std::vector<std::string> warnings;
};

/// pi sqrt(delta) / (2 omega).
double tau_qsl(const SystemSpec& spec);

/// Exact passivization time for strictly non-degenerate spectra,
/// (pi / (sqrt(3) omega)) sqrt(n - sum 1/l_j) over the unique permutation's
/// cycle lengths.
double tau_pas_nondegenerate(const SystemSpec& spec);

/// Upper bound from a passivizing permutation's cycle lengths; optionally
/// minimized over the permutation's cycle-division closure.
double tau_upper_from_permutation(const Permutation& sigma, const SystemSpec& spec,
                                  bool minimize_over_divisions = false);

enum class HamiltonianMethod { involution, nondegenerate, maximally_active };

struct TimeOptimal {
  HermitianOperator h;
  double tau;  // time at which e^{-i tau H} reaches a passive arrangement
  HamiltonianMethod method;
};

/// Builds a time-optimal Hamiltonian with bandwidth omega^2. Returns nullopt
/// when the spec is already passive (no transformation needed).
std::optional<TimeOptimal> build_time_optimal_hamiltonian(const SystemSpec& spec,
                                                          HamiltonianMethod method);

enum class BlockClass { FubiniStudy, Grassmann, Flag, GeneralizedFlag, RhoSide };

std::string to_string(BlockClass c);

struct DecompositionBlock {
  std::vector<int> indices;  // ascending
  BlockClass cls;
  bool hybrid = false;  // neither isotropy group contains the other; the
                        // distance is taken in the quotient by the group the
                        // two generate (experimental)
};

/// Invariant-subspace plan for a passivizing permutation: disjoint blocks
/// covering all indices, each containing whole degeneracy groups of both
/// spectra, with a per-block manifold classification.
struct DecompositionPlan {
  Permutation sigma;
  std::vector<DecompositionBlock> blocks;
};

/// Splits sigma's cycles into invariant blocks and classifies each. With an
/// empty grouping the finest partition of cycles compatible with the
/// degeneracy groups is used; an explicit grouping must consist of unions of
/// cycle supports. Throws NestingViolation when a block admits neither
/// one-sided reduction nor the hybrid treatment.
DecompositionPlan decompose_invariant_subspaces(
    const Permutation& sigma, const SystemSpec& spec,
    const std::vector<std::vector<int>>& grouping = {});

struct BlockDistanceResult {
  double distance;
  bool numerical = false;  // multistart minimization was used
};

/// Geodesic distance contribution of one block: closed forms for the
/// Fubini-Study, Grassmann and flag cases, multistart minimization on the
/// isotropy group otherwise.
BlockDistanceResult block_distance(const DecompositionBlock& block,
                                   const DecompositionPlan& plan,
                                   const SystemSpec& spec);

struct SetDistance {
  double distance;  // dist(1, passivizing set)
  double tau;       // distance / omega
  BoundReport report;
  DecompositionPlan plan;
};

/// dist(1, P(rho_i)) = sqrt(sum of squared block distances), minimized over
/// the cycle-division closure of sigma (and, for enumerable dimensions, all
/// passivizing permutations). When a grouping is supplied only the given
/// permutation with that grouping is evaluated.
SetDistance distance_to_passivizing_set(const SystemSpec& spec, const Permutation& sigma,
                                        const std::vector<std::vector<int>>& grouping = {});

/// One-stop bound computation: QSL, best cycle-length upper bound, and an
/// exact time when one of the certified routes applies.
BoundReport compute_bounds(const SystemSpec& spec);

}  // namespace passivize

#endif
