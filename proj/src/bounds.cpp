#include "passivize/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <set>

#include "minimize.hpp"

namespace passivize {

namespace {

constexpr double pi = std::numbers::pi;

int parity(int k) { return (k % 2 == 0) ? 1 : 0; }

double cycle_length_bound(const std::vector<int>& lengths, const SystemSpec& spec) {
  double inv = 0.0;
  for (int l : lengths) inv += 1.0 / l;
  return pi / (std::sqrt(3.0) * spec.omega()) * std::sqrt(spec.dim() - inv);
}

/// Bounded-size cycle-division closure used when scanning candidates; the
/// distance through any single valid permutation is already exact, extra
/// candidates only serve as cross-checks.
std::vector<Permutation> capped_divisions(const Permutation& sigma, const SystemSpec& spec,
                                          size_t cap, std::vector<std::string>* warnings) {
  std::set<Permutation> seen{sigma};
  std::vector<Permutation> frontier{sigma};
  while (!frontier.empty() && seen.size() < cap) {
    std::vector<Permutation> next;
    for (const auto& perm : frontier) {
      const auto dec = cycle_decomposition(perm);
      for (const auto& cyc : dec.cycles) {
        const int l = static_cast<int>(cyc.size());
        for (int r = 0; r < l; ++r)
          for (int s = r + 1; s < l; ++s) {
            if (spec.a_class(cyc[r]) != spec.a_class(cyc[s]) &&
                spec.p_class(cyc[(r + 1) % l]) != spec.p_class(cyc[(s + 1) % l]))
              continue;
            std::vector<int> im = perm.images();
            im[cyc[r]] = cyc[(s + 1) % l];
            im[cyc[s]] = cyc[(r + 1) % l];
            Permutation split(std::move(im));
            if (seen.size() >= cap) {
              if (warnings)
                warnings->push_back("cycle-division closure truncated at " +
                                    std::to_string(cap) + " permutations");
              return {seen.begin(), seen.end()};
            }
            if (seen.insert(split).second) next.push_back(std::move(split));
          }
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

std::vector<Permutation> candidate_permutations(const SystemSpec& spec,
                                                const Permutation& sigma,
                                                std::vector<std::string>* warnings) {
  constexpr size_t cap = 256;
  std::set<Permutation> cands;
  auto divs = capped_divisions(sigma, spec, cap, warnings);
  cands.insert(divs.begin(), divs.end());
  Permutation canonical = canonical_passivizing_permutation(spec);
  auto cdivs = capped_divisions(canonical, spec, cap, warnings);
  cands.insert(cdivs.begin(), cdivs.end());
  if (spec.dim() <= n_enum_max) {
    auto all = enumerate_passivizing_permutations(spec);
    if (all.size() <= cap)
      cands.insert(all.begin(), all.end());
    else if (warnings)
      warnings->push_back("passivizing set too large; scanning divisions only");
  }
  return {cands.begin(), cands.end()};
}

Permutation restrict_to_block(const Permutation& sigma, const std::vector<int>& indices) {
  std::map<int, int> local;
  for (size_t i = 0; i < indices.size(); ++i) local[indices[i]] = static_cast<int>(i);
  std::vector<int> im(indices.size());
  for (size_t i = 0; i < indices.size(); ++i) im[i] = local.at(sigma(indices[i]));
  return Permutation(std::move(im));
}

/// Partition of local block positions by the given class function.
std::vector<std::vector<int>> local_groups(const std::vector<int>& indices,
                                           const std::function<int(int)>& cls) {
  std::map<int, std::vector<int>> by_class;
  for (size_t i = 0; i < indices.size(); ++i)
    by_class[cls(indices[i])].push_back(static_cast<int>(i));
  std::vector<std::vector<int>> out;
  for (auto& [c, g] : by_class) out.push_back(std::move(g));
  return out;
}

/// Join of two partitions: connected components under "shares a group".
std::vector<std::vector<int>> join_partition(int n, const std::vector<std::vector<int>>& ga,
                                             const std::vector<std::vector<int>>& gb) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int k) {
    while (parent[k] != k) k = parent[k] = parent[parent[k]];
    return k;
  };
  auto unite = [&](int i, int j) { parent[find(i)] = find(j); };
  for (const auto* groups : {&ga, &gb})
    for (const auto& g : *groups)
      for (size_t i = 1; i < g.size(); ++i) unite(g[0], g[i]);
  std::map<int, std::vector<int>> comps;
  for (int k = 0; k < n; ++k) comps[find(k)].push_back(k);
  std::vector<std::vector<int>> out;
  for (auto& [root, comp] : comps) out.push_back(std::move(comp));
  return out;
}

/// min ||Log(P_sigma U)|| over U in the block-diagonal unitary group of the
/// given local partition. Closed forms where the quotient is a point, a
/// projective space, a Grassmannian or a flag manifold; multistart descent
/// otherwise.
BlockDistanceResult one_sided_distance(const Permutation& sub_sigma,
                                       const std::vector<std::vector<int>>& groups) {
  const int n = sub_sigma.size();
  if (groups.size() == 1) return {0.0, false};

  if (static_cast<int>(groups.size()) == n) {
    double sum = 0.0;
    for (int l : cycle_decomposition(sub_sigma).lengths) sum += (double(l) * l - 1.0) / l;
    return {pi * std::sqrt(sum / 3.0), false};
  }

  if (groups.size() == 2) {
    const auto& g1 = groups[0].size() <= groups[1].size() ? groups[0] : groups[1];
    if (g1.size() == 1) {
      const int k = g1[0];
      return {sub_sigma(k) == k ? 0.0 : pi / std::sqrt(2.0), false};
    }
    int crossings = 0;
    std::set<int> in_first(groups[0].begin(), groups[0].end());
    for (int k : groups[0])
      if (!in_first.count(sub_sigma(k))) crossings++;
    return {pi * std::sqrt(2.0 * crossings) / 2.0, false};
  }

  // Generalized flag manifold: no closed formula; multistart minimization
  // over the isotropy group, 32 seeds, best must be reproduced.
  const Matrix p_op = permutation_operator(sub_sigma).matrix();
  const detail::CommutantChart chart(n, groups);
  detail::Objective f = [&](const std::vector<double>& x) {
    return log_norm(p_op * chart.unitary(x));
  };
  auto res = detail::multistart_minimize(f, chart.param_count(), 32, 0x5eedULL, pi);
  if (res.reproduced < 3 && res.spread > 1e-7)
    throw NoConvergence("block distance minimization did not stabilize");
  return {res.best, true};
}

/// Mirrors the dispatch in block_distance: true when the block falls into
/// the generalized case that needs the multistart minimizer.
bool block_uses_minimizer(const DecompositionBlock& block, const SystemSpec& spec) {
  auto a_loc = local_groups(block.indices, [&](int k) { return spec.a_class(k); });
  auto p_loc = local_groups(block.indices, [&](int k) { return spec.p_class(k); });
  std::vector<std::vector<int>> groups;
  if (block.cls == BlockClass::RhoSide)
    groups = p_loc;
  else if (block.hybrid)
    groups = join_partition(static_cast<int>(block.indices.size()), a_loc, p_loc);
  else
    groups = a_loc;
  return groups.size() >= 3 && groups.size() < block.indices.size();
}

}  // namespace

std::string to_string(ExactMethod m) {
  switch (m) {
    case ExactMethod::nondegenerate: return "nondegenerate";
    case ExactMethod::involution: return "involution";
    case ExactMethod::decomposition: return "decomposition";
    case ExactMethod::oracle: return "oracle";
  }
  return "?";
}

std::string to_string(BlockClass c) {
  switch (c) {
    case BlockClass::FubiniStudy: return "fubini-study";
    case BlockClass::Grassmann: return "grassmann";
    case BlockClass::Flag: return "flag";
    case BlockClass::GeneralizedFlag: return "generalized-flag";
    case BlockClass::RhoSide: return "rho-side";
  }
  return "?";
}

double tau_qsl(const SystemSpec& spec) {
  return pi * std::sqrt(double(discrepancy(spec))) / (2.0 * spec.omega());
}

double tau_pas_nondegenerate(const SystemSpec& spec) {
  if (!spec.a_nondegenerate() || !spec.p_nondegenerate())
    throw DegenerateSpectrum("both spectra must be strictly non-degenerate");
  return cycle_length_bound(
      cycle_decomposition(canonical_passivizing_permutation(spec)).lengths, spec);
}

double tau_upper_from_permutation(const Permutation& sigma, const SystemSpec& spec,
                                  bool minimize_over_divisions) {
  if (!is_passivizing(sigma, spec)) throw NotPassivizing("permutation is not passivizing");
  double best = cycle_length_bound(cycle_decomposition(sigma).lengths, spec);
  if (minimize_over_divisions)
    for (const auto& candidate : cycle_division(sigma, spec))
      best = std::min(best, cycle_length_bound(cycle_decomposition(candidate).lengths, spec));
  return best;
}

std::optional<TimeOptimal> build_time_optimal_hamiltonian(const SystemSpec& spec,
                                                          HamiltonianMethod method) {
  const int n = spec.dim();
  const double omega = spec.omega();

  if (method == HamiltonianMethod::involution) {
    std::optional<Permutation> sigma;
    if (spec.a_groups().size() == 2) {
      sigma = bivalent_involution(spec);
    } else {
      Permutation canonical = canonical_passivizing_permutation(spec);
      if (is_involution(canonical)) {
        sigma = canonical;
      } else if (n <= n_enum_max) {
        for (const auto& cand : candidate_permutations(spec, canonical, nullptr))
          if (is_involution(cand)) {
            sigma = cand;
            break;
          }
      }
    }
    if (!sigma)
      throw MethodPreconditionFailed("no passivizing involution found");
    auto pairs = reduce_and_order_involution(*sigma, spec);
    if (pairs.empty()) return std::nullopt;
    const int m = static_cast<int>(pairs.size());
    Matrix h = Matrix::Zero(n, n);
    const double amp = omega / std::sqrt(2.0 * m);
    for (auto [k1, k2] : pairs) {
      h(k2, k1) = amp;
      h(k1, k2) = amp;
    }
    return TimeOptimal{HermitianOperator(std::move(h)),
                       pi * std::sqrt(2.0 * m) / (2.0 * omega),
                       HamiltonianMethod::involution};
  }

  if (method == HamiltonianMethod::nondegenerate) {
    if (!spec.a_nondegenerate() || !spec.p_nondegenerate())
      throw MethodPreconditionFailed("spectra must be strictly non-degenerate");
    Permutation sigma = canonical_passivizing_permutation(spec);
    if (sigma.is_identity()) return std::nullopt;
    const auto dec = cycle_decomposition(sigma);
    double inv = 0.0;
    for (int l : dec.lengths) inv += 1.0 / l;
    const double scale = omega * std::sqrt(3.0 / (n - inv));
    Matrix h = Matrix::Zero(n, n);
    for (const auto& cyc : dec.cycles) {
      const int l = static_cast<int>(cyc.size());
      if (l == 1) continue;
      Matrix p_block = Matrix::Zero(l, l);
      std::map<int, int> local;
      for (int i = 0; i < l; ++i) local[cyc[i]] = i;
      for (int i = 0; i < l; ++i) p_block(i, local.at(sigma(cyc[i]))) = 1.0;
      SkewLog lg = principal_log(UnitaryOperator(p_block));
      Matrix h_block = (Complex(0.0, 1.0) / pi) * lg.entries;
      h_block += (double(parity(l)) / l) * Matrix::Identity(l, l);
      for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) h(cyc[i], cyc[j]) = scale * h_block(i, j);
    }
    return TimeOptimal{HermitianOperator(std::move(h)), tau_pas_nondegenerate(spec),
                       HamiltonianMethod::nondegenerate};
  }

  // maximally_active
  for (int k = 0; k + 1 < n; ++k)
    if (spec.p()[k] > spec.p()[k + 1] && spec.p_class(k) != spec.p_class(k + 1))
      throw MethodPreconditionFailed("state is not maximally active");
  int m = 0;
  while (m < n / 2 && spec.p_class(m) != spec.p_class(n - 1 - m) &&
         spec.a_class(m) != spec.a_class(n - 1 - m))
    ++m;
  if (m == 0) return std::nullopt;
  const int delta = 2 * m;
  Matrix h = Matrix::Zero(n, n);
  const double amp = omega / std::sqrt(double(delta));
  for (int k = 0; k < m; ++k) {
    h(n - 1 - k, k) = amp;
    h(k, n - 1 - k) = amp;
  }
  return TimeOptimal{HermitianOperator(std::move(h)),
                     pi * std::sqrt(double(delta)) / (2.0 * omega),
                     HamiltonianMethod::maximally_active};
}

DecompositionPlan decompose_invariant_subspaces(const Permutation& sigma,
                                                const SystemSpec& spec,
                                                const std::vector<std::vector<int>>& grouping) {
  if (!is_passivizing(sigma, spec)) throw NotPassivizing("permutation is not passivizing");
  const int n = spec.dim();

  std::vector<std::vector<int>> blocks;
  if (grouping.empty()) {
    // Finest partition of sigma's cycles whose supports contain whole
    // degeneracy groups of both spectra: union-find over cycles merged
    // through shared groups.
    const auto dec = cycle_decomposition(sigma);
    std::vector<std::vector<int>> all_groups = spec.a_groups();
    for (const auto& g : spec.p_groups()) all_groups.push_back(g);
    blocks = join_partition(n, dec.cycles, all_groups);
  } else {
    std::vector<bool> covered(n, false);
    for (const auto& b : grouping) {
      for (int k : b) {
        if (k < 0 || k >= n || covered[k])
          throw InvalidSpec("grouping must be a disjoint cover of the indices");
        covered[k] = true;
      }
    }
    if (!std::all_of(covered.begin(), covered.end(), [](bool c) { return c; }))
      throw InvalidSpec("grouping must cover all indices");
    blocks = grouping;
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    // Block supports must be unions of cycles and contain whole degeneracy groups.
    std::vector<int> block_of(n);
    for (size_t b = 0; b < blocks.size(); ++b)
      for (int k : blocks[b]) block_of[k] = static_cast<int>(b);
    for (int k = 0; k < n; ++k)
      if (block_of[sigma(k)] != block_of[k])
        throw InvalidSpec("grouping blocks must be unions of the permutation's cycles");
    for (const auto* groups : {&spec.a_groups(), &spec.p_groups()})
      for (const auto& g : *groups)
        for (size_t i = 1; i < g.size(); ++i)
          if (block_of[g[i]] != block_of[g[0]])
            throw NestingViolation("a degeneracy group straddles two blocks");
  }
  std::sort(blocks.begin(), blocks.end());

  DecompositionPlan plan{sigma, {}};
  for (auto& idx : blocks) {
    DecompositionBlock block;
    block.indices = idx;

    auto a_loc = local_groups(idx, [&](int k) { return spec.a_class(k); });
    auto p_loc = local_groups(idx, [&](int k) { return spec.p_class(k); });
    auto contained = [&](const std::vector<std::vector<int>>& inner,
                         const std::vector<std::vector<int>>& outer) {
      std::vector<int> outer_of(idx.size());
      for (size_t g = 0; g < outer.size(); ++g)
        for (int i : outer[g]) outer_of[i] = static_cast<int>(g);
      for (const auto& g : inner)
        for (size_t i = 1; i < g.size(); ++i)
          if (outer_of[g[i]] != outer_of[g[0]]) return false;
      return true;
    };
    const bool rho_in_a = contained(p_loc, a_loc);
    const bool a_in_rho = contained(a_loc, p_loc);

    if (rho_in_a) {
      const size_t count = a_loc.size();
      size_t min_dim = idx.size();
      for (const auto& g : a_loc) min_dim = std::min(min_dim, g.size());
      if (count == idx.size())
        block.cls = BlockClass::Flag;
      else if (count == 2 && min_dim == 1)
        block.cls = BlockClass::FubiniStudy;
      else if (count == 2)
        block.cls = BlockClass::Grassmann;
      else
        block.cls = BlockClass::GeneralizedFlag;
    } else if (a_in_rho) {
      block.cls = BlockClass::RhoSide;
    } else {
      // Hybrid: admissible when every state eigenspace sits inside an
      // observable eigenspace or is a union of them; the quotient is then
      // by the group the two isotropy groups generate.
      std::vector<int> a_of(idx.size());
      for (size_t g = 0; g < a_loc.size(); ++g)
        for (int i : a_loc[g]) a_of[i] = static_cast<int>(g);
      bool ok = true;
      for (const auto& pg : p_loc) {
        std::map<int, int> touched;
        for (int i : pg) touched[a_of[i]]++;
        bool inside = touched.size() == 1;
        bool covers = true;
        for (auto [g, cnt] : touched)
          if (cnt != static_cast<int>(a_loc[g].size())) covers = false;
        if (!inside && !covers) ok = false;
      }
      if (!ok)
        throw NestingViolation(
            "neither isotropy group contains the other on a block");
      block.cls = BlockClass::GeneralizedFlag;
      block.hybrid = true;
    }
    plan.blocks.push_back(std::move(block));
  }
  return plan;
}

BlockDistanceResult block_distance(const DecompositionBlock& block,
                                   const DecompositionPlan& plan, const SystemSpec& spec) {
  Permutation sub = restrict_to_block(plan.sigma, block.indices);
  auto a_loc = local_groups(block.indices, [&](int k) { return spec.a_class(k); });
  auto p_loc = local_groups(block.indices, [&](int k) { return spec.p_class(k); });
  switch (block.cls) {
    case BlockClass::RhoSide:
      return one_sided_distance(sub, p_loc);
    case BlockClass::FubiniStudy:
    case BlockClass::Grassmann:
    case BlockClass::Flag:
      return one_sided_distance(sub, a_loc);
    case BlockClass::GeneralizedFlag:
      if (block.hybrid)
        return one_sided_distance(
            sub, join_partition(static_cast<int>(block.indices.size()), a_loc, p_loc));
      return one_sided_distance(sub, a_loc);
  }
  throw UnclassifiedBlock("block carries no classification");
}

SetDistance distance_to_passivizing_set(const SystemSpec& spec, const Permutation& sigma,
                                        const std::vector<std::vector<int>>& grouping) {
  if (!is_passivizing(sigma, spec)) throw NotPassivizing("permutation is not passivizing");

  BoundReport report;
  report.tau_qsl = tau_qsl(spec);

  std::vector<Permutation> candidates;
  if (!grouping.empty())
    candidates = {sigma};
  else
    candidates = candidate_permutations(spec, sigma, &report.warnings);

  report.tau_upper = cycle_length_bound(cycle_decomposition(sigma).lengths, spec);
  report.upper_permutation = sigma;
  for (const auto& cand : candidates) {
    double ub = cycle_length_bound(cycle_decomposition(cand).lengths, spec);
    if (ub < report.tau_upper) {
      report.tau_upper = ub;
      report.upper_permutation = cand;
    }
  }

  bool any = false;
  double best = 0.0;
  bool best_numerical = false;
  std::optional<DecompositionPlan> best_plan;
  std::string last_failure;
  int numerical_budget = 3;  // any one candidate already yields the distance
  for (const auto& cand : candidates) {
    try {
      DecompositionPlan plan = grouping.empty()
                                   ? decompose_invariant_subspaces(cand, spec)
                                   : decompose_invariant_subspaces(cand, spec, grouping);
      const bool needs_minimizer =
          std::any_of(plan.blocks.begin(), plan.blocks.end(),
                      [&](const auto& b) { return block_uses_minimizer(b, spec); });
      if (needs_minimizer && any && numerical_budget-- <= 0) continue;
      double sq = 0.0;
      bool numerical = false;
      for (const auto& block : plan.blocks) {
        auto bd = block_distance(block, plan, spec);
        sq += bd.distance * bd.distance;
        numerical |= bd.numerical;
        if (block.hybrid)
          report.warnings.push_back("hybrid isotropy block handled experimentally");
      }
      const double dist = std::sqrt(sq);
      if (!any || dist < best) {
        best = dist;
        best_numerical = numerical;
        best_plan = std::move(plan);
      }
      any = true;
    } catch (const NestingViolation& e) {
      last_failure = e.what();
    }
  }
  if (!any) throw NestingViolation(last_failure.empty() ? "no decomposable candidate"
                                                        : last_failure);

  report.tau_exact = best / spec.omega();
  report.exact_method = ExactMethod::decomposition;
  report.numerical = best_numerical;
  return SetDistance{best, best / spec.omega(), std::move(report), std::move(*best_plan)};
}

BoundReport compute_bounds(const SystemSpec& spec) {
  BoundReport report;
  report.tau_qsl = tau_qsl(spec);
  const int delta = discrepancy(spec);

  Permutation canonical = canonical_passivizing_permutation(spec);
  auto candidates = candidate_permutations(spec, canonical, &report.warnings);

  report.tau_upper = cycle_length_bound(cycle_decomposition(canonical).lengths, spec);
  report.upper_permutation = canonical;
  bool involution_found = false;
  for (const auto& cand : candidates) {
    double ub = cycle_length_bound(cycle_decomposition(cand).lengths, spec);
    if (ub < report.tau_upper) {
      report.tau_upper = ub;
      report.upper_permutation = cand;
    }
    involution_found |= is_involution(cand);
  }

  if (delta == 0) {
    report.tau_exact = 0.0;
    report.exact_method = ExactMethod::involution;
    return report;
  }
  if (involution_found) {
    report.tau_exact = report.tau_qsl;
    report.exact_method = ExactMethod::involution;
    return report;
  }
  if (spec.a_nondegenerate() && spec.p_nondegenerate()) {
    report.tau_exact = tau_pas_nondegenerate(spec);
    report.exact_method = ExactMethod::nondegenerate;
    return report;
  }
  try {
    SetDistance sd = distance_to_passivizing_set(spec, canonical);
    report.tau_exact = sd.tau;
    report.exact_method = ExactMethod::decomposition;
    report.numerical = sd.report.numerical;
  } catch (const NestingViolation& e) {
    report.warnings.push_back(std::string("no exact time: ") + e.what());
  } catch (const NoConvergence& e) {
    report.warnings.push_back(std::string("no exact time: ") + e.what());
  }
  return report;
}

}  // namespace passivize
