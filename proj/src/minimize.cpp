#include "minimize.hpp"

#include <algorithm>
#include <cmath>

namespace passivize::detail {

double pattern_search(const Objective& f, std::vector<double>& x, double initial_step,
                      double final_step) {
  double best = f(x);
  double step = initial_step;
  while (step >= final_step) {
    bool improved = true;
    int guard = 0;
    while (improved && guard++ < 60) {
      improved = false;
      for (size_t c = 0; c < x.size(); ++c) {
        for (double s : {step, -step}) {
          x[c] += s;
          const double v = f(x);
          if (v < best - 1e-15) {
            best = v;
            improved = true;
            break;
          }
          x[c] -= s;
        }
      }
    }
    step *= 0.5;
  }
  return best;
}

MultistartResult multistart_minimize(const Objective& f, int dim, int restarts,
                                     std::uint64_t seed, double span) {
  MultistartResult out;
  out.restarts = restarts;
  double lo = 0.0, hi = 0.0;
  std::vector<double> finals;
  for (int r = 0; r < restarts; ++r) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(r + 1));
    std::uniform_real_distribution<double> dist(-span, span);
    std::vector<double> x(dim);
    for (auto& v : x) v = dist(rng);
    const double v = pattern_search(f, x);
    finals.push_back(v);
    if (r == 0 || v < out.best) {
      out.best = v;
      out.best_x = x;
    }
    lo = (r == 0) ? v : std::min(lo, v);
    hi = (r == 0) ? v : std::max(hi, v);
  }
  out.spread = hi - lo;
  for (double v : finals)
    if (v <= out.best + 1e-7) out.reproduced++;
  return out;
}

CommutantChart::CommutantChart(int n, std::vector<std::vector<int>> groups)
    : n_(n), groups_(std::move(groups)) {
  params_ = 0;
  for (const auto& g : groups_) params_ += static_cast<int>(g.size() * g.size());
}

Matrix CommutantChart::unitary(const std::vector<double>& x, int offset) const {
  Matrix u = Matrix::Zero(n_, n_);
  int cursor = offset;
  for (const auto& g : groups_) {
    const int d = static_cast<int>(g.size());
    Matrix h(d, d);
    for (int i = 0; i < d; ++i) h(i, i) = x[cursor++];
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        const double re = x[cursor++];
        const double im = x[cursor++];
        h(i, j) = Complex(re, -im);
        h(j, i) = Complex(re, im);
      }
    auto [vals, vecs] = eig_hermitian(h);
    CVector ph(d);
    for (int k = 0; k < d; ++k) ph[k] = std::exp(Complex(0.0, vals[k]));
    Matrix block = vecs * ph.asDiagonal() * vecs.adjoint();
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) u(g[i], g[j]) = block(i, j);
  }
  return u;
}

std::vector<Matrix> commutant_generators(int n, const std::vector<std::vector<int>>& groups) {
  std::vector<Matrix> gens;
  for (const auto& g : groups) {
    const int d = static_cast<int>(g.size());
    for (int i = 0; i < d; ++i) {
      Matrix diag = Matrix::Zero(n, n);
      diag(g[i], g[i]) = 1.0;
      gens.push_back(std::move(diag));
    }
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        Matrix sym = Matrix::Zero(n, n);
        sym(g[i], g[j]) = 1.0;
        sym(g[j], g[i]) = 1.0;
        gens.push_back(std::move(sym));
        Matrix asym = Matrix::Zero(n, n);
        asym(g[i], g[j]) = Complex(0.0, -1.0);
        asym(g[j], g[i]) = Complex(0.0, 1.0);
        gens.push_back(std::move(asym));
      }
  }
  return gens;
}

Matrix exp_i_combination(const std::vector<Matrix>& gens, const std::vector<double>& x,
                         int n) {
  Matrix h = Matrix::Zero(n, n);
  for (size_t r = 0; r < gens.size(); ++r) h += x[r] * gens[r];
  auto [vals, vecs] = eig_hermitian(h);
  CVector ph(n);
  for (int k = 0; k < n; ++k) ph[k] = std::exp(Complex(0.0, vals[k]));
  return vecs * ph.asDiagonal() * vecs.adjoint();
}

}  // namespace passivize::detail
