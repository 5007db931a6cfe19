#ifndef PASSIVIZE_OPERATORS_HPP
#define PASSIVIZE_OPERATORS_HPP

#include <functional>
#include <utility>

#include "passivize/common.hpp"
#include "passivize/errors.hpp"

namespace passivize {

/// Dense Hermitian operator. The constructor rejects matrices whose
/// anti-Hermitian part exceeds the tolerance and symmetrizes the rest
/// so downstream eigensolvers see an exactly Hermitian matrix.
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix m);
  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

class UnitaryOperator {
 public:
  explicit UnitaryOperator(Matrix m);
  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

/// Density operator: Hermitian, unit trace, positive semidefinite
/// (eigenvalues may dip below zero by at most tol::psd).
class DensityOperator {
 public:
  explicit DensityOperator(Matrix m);
  static DensityOperator diagonal(const RVector& p);
  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  /// Eigenvalues sorted ascending.
  RVector spectrum() const;

 private:
  Matrix m_;
};

/// Principal logarithm of a unitary: a skew-Hermitian matrix together
/// with the eigenphases, all chosen in the branch (-pi, pi].
struct SkewLog {
  Matrix entries;
  RVector phases;  // unsorted, one per eigenvector
  int dim() const { return static_cast<int>(entries.rows()); }
};

/// e^{-itH} via eigendecomposition of H.
UnitaryOperator expm_skew(const HermitianOperator& h, double t);

/// Principal logarithm; eigenphases in (-pi, pi], a phase within
/// tol::phase of -pi is snapped to +pi.
SkewLog principal_log(const UnitaryOperator& u);

/// Frobenius norm sqrt(tr(X^dagger X)).
double hs_norm(const Matrix& x);

/// Geodesic distance ||Log(U^dagger V)|| in the bi-invariant metric.
double geodesic_distance(const UnitaryOperator& u, const UnitaryOperator& v);

/// tr(H^2).
double bandwidth(const HermitianOperator& h);

/// Time-dependent Hermitian generator, sampled at arbitrary times.
using Generator = std::function<Matrix(double)>;

/// Solves d/dt rho = -i[H(t), rho] by midpoint exponential splitting:
/// each step conjugates by e^{-i dt H(t_mid)}, so the spectrum of rho
/// is preserved by construction. For time-independent H any step count
/// reproduces the single-shot exponential.
DensityOperator von_neumann_evolve(const Generator& h, const DensityOperator& rho0,
                                   double total_time, int steps);

/// Default step count used by the CLI: 1000 per unit of omega*T.
int default_step_count(double omega, double total_time);

// Eigendecomposition helpers shared across the library.

/// Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.
std::pair<RVector, Matrix> eig_hermitian(const Matrix& h);

/// Eigenphases in (-pi, pi] and orthonormal eigenvectors of a unitary
/// matrix, obtained from its Schur form.
std::pair<RVector, Matrix> eig_unitary(const Matrix& u);

/// ||Log M|| for unitary M without forming the logarithm.
double log_norm(const Matrix& unitary);

/// Conjugation helper U X U^dagger.
Matrix conjugate(const Matrix& u, const Matrix& x);

}  // namespace passivize

#endif
