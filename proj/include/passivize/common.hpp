#ifndef PASSIVIZE_COMMON_HPP
#define PASSIVIZE_COMMON_HPP

#include <complex>
#include <Eigen/Dense>

namespace passivize {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;

// Numerical tolerances. Relative tolerances are applied against
// max(1, scale of the operand).
namespace tol {
inline constexpr double herm = 1e-10;    // Hermiticity check
inline constexpr double unit = 1e-10;    // unitarity check
inline constexpr double trace = 1e-10;   // unit-trace check
inline constexpr double exp = 1e-9;      // exp/log round trips
inline constexpr double psd = 1e-10;     // density-operator positivity
inline constexpr double num = 1e-8;      // derived quantities
inline constexpr double phase = 1e-12;   // snap width at the -pi branch edge
inline constexpr double deg = 1e-9;      // degeneracy detection, relative to value range
inline constexpr double prod = 1e-12;    // probability-product comparison (log space)
}  // namespace tol

inline double rel_scale(double x) { return x > 1.0 ? x : 1.0; }

}  // namespace passivize

#endif
