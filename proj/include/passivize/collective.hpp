#ifndef PASSIVIZE_COLLECTIVE_HPP
#define PASSIVIZE_COLLECTIVE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "passivize/bounds.hpp"
#include "passivize/system.hpp"

namespace passivize {

/// N identical copies of a base system, optionally with a catalyst.
/// N-copy operations require a strictly non-degenerate observable so the
/// passive state is unique.
struct CollectiveSpec {
  SystemSpec base;
  int copies = 1;
  std::optional<int> catalyst_dim;
};

/// Number of product-basis sequences whose eigenvalue product changes under
/// the canonical passivizing permutation. Products are compared in log space
/// (zero factors counted separately) within tol::prod.
long long delta_n(const CollectiveSpec& cspec);

enum class ActiveKind { qubit_pure, qubit_mixed, qutrit_rank2, qutrit_full };

/// Closed forms for maximally active qubits and qutrits.
long long delta_n_closed(ActiveKind kind, int copies);

/// Collective QSL (pi / 2 omega) sqrt(delta_N / (N n^{N-1})).
double tau_cqsl(const CollectiveSpec& cspec);

/// tau_pas / tau_cpas; requires the canonical passivizing permutation to be
/// an involution so both times are attained.
double advantage_ratio(const CollectiveSpec& cspec);

/// Closed-form advantage series for the figure data, rows (N, ratio).
std::vector<std::pair<int, double>> advantage_series(ActiveKind kind, int max_copies);

/// Hermitian coupling on the N-copy space sending each differing product
/// basis vector to its image under sigma applied factor-wise; bandwidth
/// equals omega^2 N n^{N-1} and propagation for tau_cqsl reaches the
/// product of single-copy passive states.
HermitianOperator collective_hamiltonian(const CollectiveSpec& cspec,
                                         const Permutation& sigma);

/// The N-copy problem seen as a single system: observable = sum of local
/// copies (eigenvalues sorted), state = product weights, bandwidth budget
/// omega sqrt(N n^{N-1}).
SystemSpec collective_global_spec(const CollectiveSpec& cspec);

struct AssistedBounds {
  double tau_aqsl;   // (pi / 2 omega) sqrt(delta / n_c)
  double tau_upper;  // tau_pas / sqrt(n_c), using the best available tau_pas
  bool upper_exact;  // whether tau_pas itself was exact
};

AssistedBounds assisted_bounds(const SystemSpec& spec, int catalyst_dim);

/// sqrt(n_c) H_s tensor |psi><psi| on the system+catalyst space; bandwidth
/// n_c omega^2, passivizes in tau / sqrt(n_c).
HermitianOperator assisted_hamiltonian(const HermitianOperator& h_s, int catalyst_dim,
                                       int psi_index, double omega);

/// Kronecker product, first factor most significant.
Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace passivize

#endif
