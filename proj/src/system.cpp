#include "passivize/system.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>

namespace passivize {

namespace {

// Clusters sorted values into classes whose members differ by at most
// tol::deg * max(1, value range). Returns the class id per sorted position.
std::vector<int> cluster_sorted(const std::vector<double>& sorted_vals) {
  const int n = static_cast<int>(sorted_vals.size());
  double range = sorted_vals.back() - sorted_vals.front();
  const double gap = tol::deg * rel_scale(std::abs(range));
  std::vector<int> cls(n, 0);
  for (int k = 1; k < n; ++k)
    cls[k] = (std::abs(sorted_vals[k] - sorted_vals[k - 1]) > gap) ? cls[k - 1] + 1
                                                                   : cls[k - 1];
  return cls;
}

std::vector<int> count_classes(const SystemSpec& spec, const std::vector<int>& indices,
                               bool of_sigma, const Permutation* sigma) {
  std::vector<int> counts(spec.p_groups().size(), 0);
  for (int k : indices) counts[spec.p_class(of_sigma ? (*sigma)(k) : k)]++;
  return counts;
}

}  // namespace

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = static_cast<int>(images_.size());
  std::vector<bool> seen(n, false);
  for (int v : images_) {
    if (v < 0 || v >= n || seen[v])
      throw InvalidSpec("permutation image list is not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 0);
  return Permutation(std::move(im));
}

Permutation Permutation::from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 0);
  for (const auto& c : cycles)
    for (size_t i = 0; i < c.size(); ++i) im[c[i]] = c[(i + 1) % c.size()];
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int k = 0; k < size(); ++k) inv[images_[k]] = k;
  return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
  for (int k = 0; k < size(); ++k)
    if (images_[k] != k) return false;
  return true;
}

SystemSpec::SystemSpec(std::vector<double> a, std::vector<double> p, double omega)
    : omega_(omega) {
  const int n = static_cast<int>(a.size());
  if (n == 0 || p.size() != a.size()) throw InvalidSpec("spectra must be nonempty and of equal length");
  if (!(omega > 0.0)) throw InvalidSpec("bandwidth budget omega must be positive");
  if (!std::is_sorted(a.begin(), a.end()))
    throw UnsortedObservable("observable spectrum must be nondecreasing");
  double sum = 0.0;
  for (double v : p) {
    if (v < -tol::psd) throw NotAProbabilityVector("state eigenvalue below zero");
    sum += v;
  }
  if (std::abs(sum - 1.0) > tol::trace)
    throw NotAProbabilityVector("state eigenvalues do not sum to one");

  a_ = Eigen::Map<RVector>(a.data(), n);
  p_ = Eigen::Map<RVector>(p.data(), n);

  a_class_ = cluster_sorted(a);
  a_groups_.assign(a_class_.back() + 1, {});
  for (int k = 0; k < n; ++k) a_groups_[a_class_[k]].push_back(k);

  // p-classes ordered by descending value; ties by ascending index.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return p[i] > p[j]; });
  std::vector<double> desc_vals(n);
  for (int k = 0; k < n; ++k) desc_vals[k] = -p[order[k]];
  std::vector<int> cls_sorted = cluster_sorted(desc_vals);
  p_class_.assign(n, 0);
  for (int k = 0; k < n; ++k) p_class_[order[k]] = cls_sorted[k];
  p_groups_.assign(cls_sorted.back() + 1, {});
  for (int k = 0; k < n; ++k) p_groups_[p_class_[k]].push_back(k);

  // Descending-p index order with class-stable ties.
  desc_p_ = order;
  std::stable_sort(desc_p_.begin(), desc_p_.end(), [&](int i, int j) {
    if (p_class_[i] != p_class_[j]) return p_class_[i] < p_class_[j];
    return i < j;
  });

  // Passive arrangement: descending p filled into ascending a-groups.
  int cursor = 0;
  for (const auto& g : a_groups_) {
    std::vector<int> counts(p_groups_.size(), 0);
    for (size_t i = 0; i < g.size(); ++i) counts[p_class_[desc_p_[cursor++]]]++;
    passive_counts_.push_back(std::move(counts));
  }
}

SystemSpec validate_spec(std::vector<double> a, std::vector<double> p, double omega) {
  return SystemSpec(std::move(a), std::move(p), omega);
}

double min_expectation(const SystemSpec& spec) {
  double e = 0.0;
  for (int k = 0; k < spec.dim(); ++k) e += spec.a()[k] * spec.p()[spec.descending_p_order()[k]];
  return e;
}

double max_expectation(const SystemSpec& spec) {
  const auto& desc = spec.descending_p_order();
  double e = 0.0;
  for (int k = 0; k < spec.dim(); ++k)
    e += spec.a()[k] * spec.p()[desc[spec.dim() - 1 - k]];
  return e;
}

bool is_passive(const DensityOperator& rho, const SystemSpec& spec, double tolerance) {
  if (rho.dim() != spec.dim()) throw SpectrumMismatch("dimension mismatch");
  RVector sp = rho.spectrum();
  RVector ref = spec.p();
  std::sort(ref.data(), ref.data() + ref.size());
  if ((sp - ref).lpNorm<Eigen::Infinity>() > tol::num * rel_scale(ref.lpNorm<Eigen::Infinity>()))
    throw SpectrumMismatch("state is not isospectral with the spec");

  const double scale = rel_scale(spec.a().lpNorm<Eigen::Infinity>());
  Matrix a_op = Matrix::Zero(spec.dim(), spec.dim());
  for (int k = 0; k < spec.dim(); ++k) a_op(k, k) = spec.a()[k];
  if ((a_op * rho.matrix() - rho.matrix() * a_op).norm() > tolerance * scale) return false;
  double energy = (rho.matrix() * a_op).trace().real();
  return std::abs(energy - min_expectation(spec)) <= tolerance * scale;
}

bool is_passivizing(const Permutation& sigma, const SystemSpec& spec) {
  if (sigma.size() != spec.dim()) return false;
  for (size_t g = 0; g < spec.a_groups().size(); ++g)
    if (count_classes(spec, spec.a_groups()[g], true, &sigma) !=
        spec.passive_class_counts()[g])
      return false;
  return true;
}

Permutation canonical_passivizing_permutation(const SystemSpec& spec) {
  return Permutation(spec.descending_p_order());
}

std::vector<Permutation> enumerate_passivizing_permutations(const SystemSpec& spec) {
  const int n = spec.dim();
  if (n > n_enum_max)
    throw DimensionTooLargeForEnumeration("enumeration supports dimension <= 10");
  std::vector<Permutation> out;
  std::vector<int> image(n, -1);
  std::vector<bool> used(n, false);
  // Remaining p-class quota per a-group; a source index is admissible at a
  // position iff its class is still needed by the position's group.
  std::vector<std::vector<int>> needed = spec.passive_class_counts();

  auto dfs = [&](auto&& self, int pos) -> void {
    if (pos == n) {
      out.emplace_back(image);
      return;
    }
    const int group = spec.a_class(pos);
    for (int src = 0; src < n; ++src) {
      const int cls = spec.p_class(src);
      if (used[src] || needed[group][cls] == 0) continue;
      used[src] = true;
      needed[group][cls]--;
      image[pos] = src;
      self(self, pos + 1);
      used[src] = false;
      needed[group][cls]++;
    }
    image[pos] = -1;
  };
  dfs(dfs, 0);
  std::sort(out.begin(), out.end());
  return out;
}

int discrepancy(const SystemSpec& spec) {
  int delta = 0;
  for (size_t g = 0; g < spec.a_groups().size(); ++g) {
    std::vector<int> orig = count_classes(spec, spec.a_groups()[g], false, nullptr);
    const auto& passive = spec.passive_class_counts()[g];
    for (size_t c = 0; c < orig.size(); ++c)
      if (orig[c] > passive[c]) delta += orig[c] - passive[c];
  }
  return delta;
}

CycleDecomposition cycle_decomposition(const Permutation& sigma) {
  const int n = sigma.size();
  std::vector<bool> visited(n, false);
  CycleDecomposition out;
  for (int start = 0; start < n; ++start) {
    if (visited[start]) continue;
    std::vector<int> cycle;
    int k = start;
    do {
      visited[k] = true;
      cycle.push_back(k);
      k = sigma(k);
    } while (k != start);
    out.cycles.push_back(std::move(cycle));
  }
  for (const auto& c : out.cycles) out.lengths.push_back(static_cast<int>(c.size()));
  return out;
}

bool is_involution(const Permutation& sigma) {
  for (int k = 0; k < sigma.size(); ++k)
    if (sigma(sigma(k)) != k) return false;
  return true;
}

std::vector<std::pair<int, int>> reduce_and_order_involution(const Permutation& sigma,
                                                             const SystemSpec& spec) {
  if (!is_involution(sigma)) throw NotAnInvolution("permutation has a cycle longer than 2");
  if (!is_passivizing(sigma, spec)) throw NotPassivizing("involution is not passivizing");
  std::vector<std::pair<int, int>> kept;
  for (int k = 0; k < sigma.size(); ++k) {
    if (sigma(k) <= k) continue;
    const int k2 = sigma(k);
    if (spec.a_class(k) == spec.a_class(k2) || spec.p_class(k) == spec.p_class(k2))
      continue;  // acts inside one eigenspace; replaced by trivial cycles
    kept.emplace_back(k, k2);
  }
  std::stable_partition(kept.begin(), kept.end(), [&](const auto& t) {
    return spec.p()[t.first] < spec.p()[t.second];
  });
  return kept;
}

std::vector<Permutation> cycle_division(const Permutation& sigma, const SystemSpec& spec) {
  if (!is_passivizing(sigma, spec)) throw NotPassivizing("permutation is not passivizing");
  std::set<Permutation> seen{sigma};
  std::vector<Permutation> frontier{sigma};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& perm : frontier) {
      const auto dec = cycle_decomposition(perm);
      for (const auto& cyc : dec.cycles) {
        const int l = static_cast<int>(cyc.size());
        if (l < 2) continue;
        for (int r = 0; r < l; ++r) {
          for (int s = r + 1; s < l; ++s) {
            const bool same_a = spec.a_class(cyc[r]) == spec.a_class(cyc[s]);
            const bool same_p =
                spec.p_class(cyc[(r + 1) % l]) == spec.p_class(cyc[(s + 1) % l]);
            if (!same_a && !same_p) continue;
            std::vector<int> im = perm.images();
            im[cyc[r]] = cyc[(s + 1) % l];
            im[cyc[s]] = cyc[(r + 1) % l];
            Permutation split(std::move(im));
            if (!is_passivizing(split, spec))
              throw NotPassivizing("cycle split produced a non-passivizing permutation");
            if (seen.insert(split).second) next.push_back(std::move(split));
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

UnitaryOperator permutation_operator(const Permutation& sigma) {
  Matrix m = Matrix::Zero(sigma.size(), sigma.size());
  for (int k = 0; k < sigma.size(); ++k) m(k, sigma(k)) = 1.0;
  return UnitaryOperator(std::move(m));
}

Permutation bivalent_involution(const SystemSpec& spec) {
  if (spec.a_groups().size() != 2)
    throw NotBivalent("observable must have exactly two distinct eigenvalues");
  std::array<std::vector<int>, 2> errant;
  for (int g = 0; g < 2; ++g) {
    std::vector<int> orig = count_classes(spec, spec.a_groups()[g], false, nullptr);
    std::vector<int> surplus(orig.size());
    for (size_t c = 0; c < orig.size(); ++c)
      surplus[c] = std::max(0, orig[c] - spec.passive_class_counts()[g][c]);
    for (int k : spec.a_groups()[g])
      if (surplus[spec.p_class(k)] > 0) {
        surplus[spec.p_class(k)]--;
        errant[g].push_back(k);
      }
  }
  if (errant[0].size() != errant[1].size())
    throw NotBivalent("errant eigenvalue counts disagree");  // cannot happen for valid specs
  std::vector<int> im(spec.dim());
  std::iota(im.begin(), im.end(), 0);
  for (size_t i = 0; i < errant[0].size(); ++i)
    std::swap(im[errant[0][i]], im[errant[1][i]]);
  Permutation sigma(std::move(im));
  if (!is_passivizing(sigma, spec))
    throw NotBivalent("pairing failed to produce a passivizing involution");
  return sigma;
}

}  // namespace passivize
