#ifndef PASSIVIZE_SYSTEM_HPP
#define PASSIVIZE_SYSTEM_HPP

#include <optional>
#include <utility>
#include <vector>

#include "passivize/operators.hpp"

namespace passivize {

/// Permutation of {0,...,n-1} stored as its image list: sigma(k) = images[k].
/// The associated operator is P = sum_k |k><sigma(k)|, so conjugating
/// diag(p) by P yields diag(p o sigma).
class Permutation {
 public:
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int n);
  /// Builds from disjoint cycles, e.g. {{0,2,1}} maps 0->2, 2->1, 1->0.
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int k) const { return images_[k]; }
  const std::vector<int>& images() const { return images_; }
  Permutation inverse() const;
  bool is_identity() const;

  friend bool operator==(const Permutation& a, const Permutation& b) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.images_ <=> b.images_;
  }

 private:
  std::vector<int> images_;
};

/// Disjoint cycles in canonical form: every cycle starts at its smallest
/// element (trivial cycles included) and cycles are sorted by that element.
struct CycleDecomposition {
  std::vector<std::vector<int>> cycles;
  std::vector<int> lengths;
};

/// Problem instance: spectra of the observable A (nondecreasing) and of the
/// incoherent initial state, plus the bandwidth budget omega (tr H^2 <= omega^2).
/// Degeneracy classes of both spectra are detected once and cached; two values
/// are in one class when they differ by at most tol::deg * max(1, value range).
class SystemSpec {
 public:
  SystemSpec(std::vector<double> a, std::vector<double> p, double omega);

  int dim() const { return static_cast<int>(a_.size()); }
  const RVector& a() const { return a_; }
  const RVector& p() const { return p_; }
  double omega() const { return omega_; }

  int a_class(int k) const { return a_class_[k]; }
  int p_class(int k) const { return p_class_[k]; }
  /// Index groups of equal a-values, ascending in a.
  const std::vector<std::vector<int>>& a_groups() const { return a_groups_; }
  /// Index groups of equal p-values, descending in p.
  const std::vector<std::vector<int>>& p_groups() const { return p_groups_; }
  /// For each a-group, the p-class multiset a passive state carries there,
  /// as counts per p-class.
  const std::vector<std::vector<int>>& passive_class_counts() const {
    return passive_counts_;
  }
  /// Indices sorted by descending p, ties by ascending index.
  const std::vector<int>& descending_p_order() const { return desc_p_; }

  bool a_nondegenerate() const { return static_cast<int>(a_groups_.size()) == dim(); }
  bool p_nondegenerate() const { return static_cast<int>(p_groups_.size()) == dim(); }

 private:
  RVector a_, p_;
  double omega_;
  std::vector<int> a_class_, p_class_;
  std::vector<std::vector<int>> a_groups_, p_groups_;
  std::vector<std::vector<int>> passive_counts_;
  std::vector<int> desc_p_;
};

/// Validates raw spectra and returns the checked instance.
SystemSpec validate_spec(std::vector<double> a, std::vector<double> p, double omega);

/// Passive energy: min over isospectral states of tr(rho A).
double min_expectation(const SystemSpec& spec);

/// Maximally active energy: max over isospectral states of tr(rho A).
double max_expectation(const SystemSpec& spec);

/// True iff rho commutes with diag(a) and attains the passive energy,
/// both within tolerance. Throws SpectrumMismatch when rho is not
/// isospectral with diag(p).
bool is_passive(const DensityOperator& rho, const SystemSpec& spec,
                double tolerance = tol::num);

/// True iff sigma sends the initial spectrum to a passive arrangement.
bool is_passivizing(const Permutation& sigma, const SystemSpec& spec);

/// Deterministic passivizing permutation: descending p against ascending a,
/// ties resolved by smallest original index.
Permutation canonical_passivizing_permutation(const SystemSpec& spec);

inline constexpr int n_enum_max = 10;

/// All passivizing permutations, sorted. Requires dim <= n_enum_max.
std::vector<Permutation> enumerate_passivizing_permutations(const SystemSpec& spec);

/// Discrepancy: per a-eigenspace, the number of initial-state eigenvalues
/// not shared (with multiplicity) with a passive state's component; summed.
int discrepancy(const SystemSpec& spec);

CycleDecomposition cycle_decomposition(const Permutation& sigma);

bool is_involution(const Permutation& sigma);

/// Drops transpositions acting inside one a-class or one p-class and orders
/// the rest so that expectation values decrease monotonically along the
/// sequence. Pairs are (k1, k2) with k1 < k2.
std::vector<std::pair<int, int>> reduce_and_order_involution(const Permutation& sigma,
                                                             const SystemSpec& spec);

/// Closure of sigma under cycle splitting: a cycle (k1..kl) splits at
/// positions r < s when a[k_r] = a[k_s] (the two positions swap received
/// eigenvalues inside one A-eigenspace) or when the received values
/// p[k_{r+1}], p[k_{s+1}] coincide. Every element is verified passivizing.
std::vector<Permutation> cycle_division(const Permutation& sigma, const SystemSpec& spec);

/// P = sum_k |k><sigma(k)|.
UnitaryOperator permutation_operator(const Permutation& sigma);

/// For a bivalent observable, pairs the errant eigenvalues of the two
/// components into transpositions; the result is a passivizing involution.
Permutation bivalent_involution(const SystemSpec& spec);

}  // namespace passivize

#endif
