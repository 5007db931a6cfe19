#ifndef PASSIVIZE_SRC_MINIMIZE_HPP
#define PASSIVIZE_SRC_MINIMIZE_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "passivize/operators.hpp"

namespace passivize::detail {

using Objective = std::function<double(const std::vector<double>&)>;

struct MultistartResult {
  double best = 0.0;
  std::vector<double> best_x;
  double spread = 0.0;   // max - min over restart finals
  int reproduced = 0;    // restarts finishing within 1e-7 of the best
  int restarts = 0;
};

/// Coordinate pattern search with shrinking step. Chosen over gradient
/// methods because ||Log(.)|| is non-smooth at branch crossings.
double pattern_search(const Objective& f, std::vector<double>& x,
                      double initial_step = 0.5, double final_step = 1e-8);

/// Seeded multistart around uniform starting points in [-span, span]^dim.
/// Restarts run sequentially and the reduction is a deterministic min by
/// (value, restart index), so identical seeds give identical results.
MultistartResult multistart_minimize(const Objective& f, int dim, int restarts,
                                     std::uint64_t seed, double span);

/// Chart on a block-diagonal unitary commutant: d^2 Hermitian parameters per
/// group of size d, exponentiated group by group.
class CommutantChart {
 public:
  CommutantChart(int n, std::vector<std::vector<int>> groups);
  int param_count() const { return params_; }
  /// exp(i H(x)) with H the Hermitian combination read from x at `offset`.
  Matrix unitary(const std::vector<double>& x, int offset = 0) const;

 private:
  int n_;
  std::vector<std::vector<int>> groups_;
  int params_;
};

/// Hermitian generator basis of the same commutant, one matrix per parameter.
std::vector<Matrix> commutant_generators(int n, const std::vector<std::vector<int>>& groups);

/// exp(i sum_r x_r G_r) for Hermitian generators G.
Matrix exp_i_combination(const std::vector<Matrix>& gens, const std::vector<double>& x,
                         int n);

}  // namespace passivize::detail

#endif
