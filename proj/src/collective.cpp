#include "passivize/collective.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace passivize {

namespace {

constexpr double pi = std::numbers::pi;

void require_strict_observable(const SystemSpec& base) {
  if (!base.a_nondegenerate())
    throw InvalidSpec("N-copy operations require a non-degenerate observable");
}

long long ipow(long long base, int e) {
  long long r = 1;
  while (e-- > 0) r *= base;
  return r;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Walks all n^N index sequences; calls fn(seq).
template <typename F>
void for_each_sequence(int n, int copies, F&& fn) {
  std::vector<int> seq(copies, 0);
  while (true) {
    fn(seq);
    int pos = copies - 1;
    while (pos >= 0 && ++seq[pos] == n) seq[pos--] = 0;
    if (pos < 0) break;
  }
}

/// Compares the eigenvalue products of a sequence and its sigma image.
/// Zero factors are counted; nonzero products are compared by log sums.
bool products_differ(const std::vector<int>& seq, const Permutation& sigma,
                     const RVector& p) {
  int zeros_a = 0, zeros_b = 0;
  double log_a = 0.0, log_b = 0.0;
  for (int k : seq) {
    if (p[k] <= 0.0)
      zeros_a++;
    else
      log_a += std::log(p[k]);
    const int j = sigma(k);
    if (p[j] <= 0.0)
      zeros_b++;
    else
      log_b += std::log(p[j]);
  }
  if ((zeros_a > 0) != (zeros_b > 0)) return true;
  if (zeros_a > 0 && zeros_b > 0) return false;  // both products vanish
  return std::abs(log_a - log_b) > tol::prod * rel_scale(std::abs(log_a));
}

}  // namespace

long long delta_n(const CollectiveSpec& cspec) {
  require_strict_observable(cspec.base);
  const int n = cspec.base.dim();
  const long long total = ipow(n, cspec.copies);
  if (total > 10'000'000)
    throw TooLarge("sequence count exceeds the exact-counting limit");
  const Permutation sigma = canonical_passivizing_permutation(cspec.base);
  long long count = 0;
  for_each_sequence(n, cspec.copies, [&](const std::vector<int>& seq) {
    if (products_differ(seq, sigma, cspec.base.p())) count++;
  });
  return count;
}

long long delta_n_closed(ActiveKind kind, int copies) {
  const int n_copies = copies;
  switch (kind) {
    case ActiveKind::qubit_pure:
      return 2;
    case ActiveKind::qubit_mixed: {
      long long even = (n_copies % 2 == 0) ? std::llround(binomial(n_copies, n_copies / 2)) : 0;
      return ipow(2, n_copies) - even;
    }
    case ActiveKind::qutrit_rank2:
      return 2 * (ipow(2, n_copies) - 1);
    case ActiveKind::qutrit_full: {
      long long sum = 0;
      for (int k = 0; k <= n_copies / 2; ++k) {
        // trinomial N! / (k! k! (N-2k)!)
        double t = binomial(n_copies, k) * binomial(n_copies - k, k);
        sum += std::llround(t);
      }
      return ipow(3, n_copies) - sum;
    }
  }
  return 0;
}

double tau_cqsl(const CollectiveSpec& cspec) {
  require_strict_observable(cspec.base);
  const double dn = static_cast<double>(delta_n(cspec));
  const double budget =
      cspec.copies * std::pow(double(cspec.base.dim()), cspec.copies - 1);
  return pi / (2.0 * cspec.base.omega()) * std::sqrt(dn / budget);
}

double advantage_ratio(const CollectiveSpec& cspec) {
  require_strict_observable(cspec.base);
  const Permutation sigma = canonical_passivizing_permutation(cspec.base);
  if (!is_involution(sigma))
    throw NotInvolution("advantage ratio requires a passivizing involution");
  // tau_pas = tau_qsl for involutions, and tau_cpas = tau_cqsl.
  const double dn = static_cast<double>(delta_n(cspec));
  const double delta = static_cast<double>(discrepancy(cspec.base));
  const double budget =
      cspec.copies * std::pow(double(cspec.base.dim()), cspec.copies - 1);
  return std::sqrt(delta * budget / dn);
}

std::vector<std::pair<int, double>> advantage_series(ActiveKind kind, int max_copies) {
  std::vector<std::pair<int, double>> rows;
  for (int n_copies = 1; n_copies <= max_copies; ++n_copies) {
    const double dn = static_cast<double>(delta_n_closed(kind, n_copies));
    double ratio = 0.0;
    switch (kind) {
      case ActiveKind::qubit_pure:
        ratio = std::sqrt(n_copies * std::pow(2.0, n_copies - 1));
        break;
      case ActiveKind::qubit_mixed:
        ratio = std::sqrt(n_copies * std::pow(2.0, n_copies) / dn);
        break;
      case ActiveKind::qutrit_rank2:
        ratio = std::sqrt(n_copies * std::pow(3.0, n_copies - 1) /
                          (std::pow(2.0, n_copies) - 1.0));
        break;
      case ActiveKind::qutrit_full:
        ratio = std::sqrt(2.0 * n_copies * std::pow(3.0, n_copies - 1) / dn);
        break;
    }
    rows.emplace_back(n_copies, ratio);
  }
  return rows;
}

HermitianOperator collective_hamiltonian(const CollectiveSpec& cspec,
                                         const Permutation& sigma) {
  require_strict_observable(cspec.base);
  if (!is_involution(sigma))
    throw NotInvolution("the collective coupling requires an involution");
  if (!is_passivizing(sigma, cspec.base))
    throw NotPassivizing("permutation is not passivizing");
  const int n = cspec.base.dim();
  const long long dim = ipow(n, cspec.copies);
  if (dim > 4096) throw TooLarge("N-copy dimension exceeds 4096");

  const double t_cqsl = tau_cqsl(cspec);
  const double amp = pi / (2.0 * t_cqsl);
  Matrix h = Matrix::Zero(dim, dim);
  for_each_sequence(n, cspec.copies, [&](const std::vector<int>& seq) {
    if (!products_differ(seq, sigma, cspec.base.p())) return;
    long long row = 0, col = 0;
    for (int k : seq) row = row * n + k;
    for (int k : seq) col = col * n + sigma(k);
    h(row, col) = amp;  // the image sequence contributes the adjoint entry
  });
  return HermitianOperator(std::move(h));
}

SystemSpec collective_global_spec(const CollectiveSpec& cspec) {
  require_strict_observable(cspec.base);
  const int n = cspec.base.dim();
  const long long dim = ipow(n, cspec.copies);
  if (dim > 100'000) throw TooLarge("N-copy dimension too large for a global spec");
  std::vector<std::pair<double, double>> entries;  // (sum of a, product of p)
  for_each_sequence(n, cspec.copies, [&](const std::vector<int>& seq) {
    double a_sum = 0.0, p_prod = 1.0;
    for (int k : seq) {
      a_sum += cspec.base.a()[k];
      p_prod *= cspec.base.p()[k];
    }
    entries.emplace_back(a_sum, p_prod);
  });
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<double> a, p;
  double p_sum = 0.0;
  for (auto& [av, pv] : entries) {
    a.push_back(av);
    p.push_back(pv);
    p_sum += pv;
  }
  for (auto& pv : p) pv /= p_sum;  // remove roundoff drift from the products
  const double budget =
      cspec.base.omega() *
      std::sqrt(cspec.copies * std::pow(double(n), cspec.copies - 1));
  return SystemSpec(std::move(a), std::move(p), budget);
}

AssistedBounds assisted_bounds(const SystemSpec& spec, int catalyst_dim) {
  if (catalyst_dim < 1) throw InvalidSpec("catalyst dimension must be positive");
  const double root = std::sqrt(double(catalyst_dim));
  AssistedBounds out{};
  out.tau_aqsl = tau_qsl(spec) / root;
  BoundReport bounds = compute_bounds(spec);
  if (bounds.tau_exact) {
    out.tau_upper = *bounds.tau_exact / root;
    out.upper_exact = true;
  } else {
    out.tau_upper = bounds.tau_upper / root;
    out.upper_exact = false;
  }
  return out;
}

HermitianOperator assisted_hamiltonian(const HermitianOperator& h_s, int catalyst_dim,
                                       int psi_index, double omega) {
  if (catalyst_dim < 1 || psi_index < 0 || psi_index >= catalyst_dim)
    throw InvalidSpec("catalyst state index out of range");
  const double bw = bandwidth(h_s);
  if (std::abs(bw - omega * omega) > tol::num * rel_scale(omega * omega))
    throw BandwidthMismatch("system Hamiltonian must saturate the bandwidth budget");
  Matrix proj = Matrix::Zero(catalyst_dim, catalyst_dim);
  proj(psi_index, psi_index) = 1.0;
  return HermitianOperator(std::sqrt(double(catalyst_dim)) * kron(h_s.matrix(), proj));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace passivize
