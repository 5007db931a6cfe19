#include "passivize/operators.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace passivize {

namespace {

double herm_defect(const Matrix& m) { return (m - m.adjoint()).norm(); }

}  // namespace

HermitianOperator::HermitianOperator(Matrix m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw NonHermitianInput("operator must be a nonempty square matrix");
  if (herm_defect(m) > tol::herm * rel_scale(m.norm()))
    throw NonHermitianInput("matrix is not Hermitian within tolerance");
  m_ = 0.5 * (m + m.adjoint().eval());
}

UnitaryOperator::UnitaryOperator(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0)
    throw NonUnitaryInput("operator must be a nonempty square matrix");
  Matrix defect = m_.adjoint() * m_;
  defect -= Matrix::Identity(m_.rows(), m_.cols());
  if (defect.norm() > tol::unit * rel_scale(std::sqrt(double(m_.rows()))))
    throw NonUnitaryInput("matrix is not unitary within tolerance");
}

DensityOperator::DensityOperator(Matrix m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw SpectrumMismatch("density operator must be a nonempty square matrix");
  if (herm_defect(m) > tol::herm * rel_scale(m.norm()))
    throw SpectrumMismatch("density operator is not Hermitian");
  m_ = 0.5 * (m + m.adjoint().eval());
  if (std::abs(m_.trace().real() - 1.0) > tol::trace ||
      std::abs(m_.trace().imag()) > tol::trace)
    throw SpectrumMismatch("density operator trace differs from one");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol::psd)
    throw SpectrumMismatch("density operator has a negative eigenvalue");
}

DensityOperator DensityOperator::diagonal(const RVector& p) {
  Matrix m = Matrix::Zero(p.size(), p.size());
  for (Eigen::Index k = 0; k < p.size(); ++k) m(k, k) = p[k];
  return DensityOperator(m);
}

RVector DensityOperator::spectrum() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

std::pair<RVector, Matrix> eig_hermitian(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  return {es.eigenvalues(), es.eigenvectors()};
}

std::pair<RVector, Matrix> eig_unitary(const Matrix& u) {
  // A unitary matrix is normal, so its Schur form is diagonal up to
  // roundoff and the Schur vectors are an orthonormal eigenbasis.
  Eigen::ComplexSchur<Matrix> schur(u);
  const Eigen::Index n = u.rows();
  RVector phases(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    double th = std::arg(schur.matrixT()(k, k));
    if (th < -std::numbers::pi + tol::phase) th = std::numbers::pi;
    phases[k] = th;
  }
  return {phases, schur.matrixU()};
}

UnitaryOperator expm_skew(const HermitianOperator& h, double t) {
  auto [vals, vecs] = eig_hermitian(h.matrix());
  CVector ph(vals.size());
  for (Eigen::Index k = 0; k < vals.size(); ++k)
    ph[k] = std::exp(Complex(0.0, -t * vals[k]));
  return UnitaryOperator(vecs * ph.asDiagonal() * vecs.adjoint());
}

SkewLog principal_log(const UnitaryOperator& u) {
  auto [phases, vecs] = eig_unitary(u.matrix());
  CVector d(phases.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) d[k] = Complex(0.0, phases[k]);
  SkewLog out{vecs * d.asDiagonal() * vecs.adjoint(), phases};
  out.entries = 0.5 * (out.entries - out.entries.adjoint().eval());
  return out;
}

double hs_norm(const Matrix& x) {
  if (x.rows() != x.cols()) throw DimensionMismatch("hs_norm expects a square matrix");
  return x.norm();
}

double log_norm(const Matrix& unitary) {
  auto [phases, vecs] = eig_unitary(unitary);
  return std::sqrt(phases.squaredNorm());
}

double geodesic_distance(const UnitaryOperator& u, const UnitaryOperator& v) {
  if (u.dim() != v.dim())
    throw DimensionMismatch("geodesic_distance expects operators of equal dimension");
  return log_norm(u.matrix().adjoint() * v.matrix());
}

double bandwidth(const HermitianOperator& h) { return h.matrix().squaredNorm(); }

Matrix conjugate(const Matrix& u, const Matrix& x) { return u * x * u.adjoint(); }

int default_step_count(double omega, double total_time) {
  double s = 1000.0 * omega * total_time;
  if (s < 1.0) return 1;
  return static_cast<int>(std::ceil(s));
}

DensityOperator von_neumann_evolve(const Generator& h, const DensityOperator& rho0,
                                   double total_time, int steps) {
  if (total_time < 0.0) throw NegativeTime("evolution time must be nonnegative");
  if (steps < 1) throw NegativeTime("step count must be positive");
  if (total_time == 0.0) return rho0;
  const double dt = total_time / steps;
  Matrix rho = rho0.matrix();
  for (int s = 0; s < steps; ++s) {
    const double t_mid = (s + 0.5) * dt;
    Matrix hm = h(t_mid);
    if (hm.rows() != rho.rows() || hm.cols() != rho.cols())
      throw NonHermitianGenerator("generator dimension mismatch");
    if ((hm - hm.adjoint()).norm() > tol::herm * rel_scale(hm.norm()))
      throw NonHermitianGenerator("generator is not Hermitian at sampled time");
    UnitaryOperator step = expm_skew(HermitianOperator(std::move(hm)), dt);
    rho = conjugate(step.matrix(), rho);
    rho = 0.5 * (rho + rho.adjoint().eval());
  }
  return DensityOperator(std::move(rho));
}

}  // namespace passivize
