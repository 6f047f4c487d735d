#include "indtree/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>

#include "indtree/graph.hpp"
#include "indtree/rng.hpp"
#include "indtree/threshold.hpp"
#include "indtree/tree_search.hpp"

namespace indtree {

namespace {

void partition_rec(int total, int max_part, std::vector<int>& current,
                   const std::function<void(const std::vector<int>&)>& fn) {
  if (total == 0) {
    fn(current);
    return;
  }
  for (int part = std::min(total, max_part); part >= 1; --part) {
    current.push_back(part);
    partition_rec(total - part, part, current, fn);
    current.pop_back();
  }
}

}  // namespace

void for_each_partition(int total, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> current;
  partition_rec(total, total, current, fn);
}

void for_each_profile_realization(
    const ForestProfile& profile,
    const std::function<void(const std::vector<std::pair<int, int>>&)>& fn) {
  std::vector<std::vector<LabeledTree>> part_trees;
  for (int f : profile.parts) part_trees.push_back(enumerate_trees(f));
  std::vector<std::size_t> pick(profile.parts.size(), 0);
  while (true) {
    std::vector<std::pair<int, int>> edges;
    int offset = 0;
    for (std::size_t i = 0; i < profile.parts.size(); ++i) {
      for (auto [u, v] : part_trees[i][pick[i]].edges) {
        edges.push_back({u + offset, v + offset});
      }
      offset += profile.parts[i];
    }
    fn(edges);
    std::size_t pos = 0;
    while (pos < pick.size() && ++pick[pos] == part_trees[pos].size()) pick[pos++] = 0;
    if (pos == pick.size()) break;
  }
}

std::map<int, long long> brute_overlapping_pair_counts(int k, int ell) {
  // Overlap = labels {0..ell-1} in both trees; edge sets inside the overlap
  // must coincide, and m = ell - (overlap edges) since the overlap is a forest.
  const std::vector<LabeledTree> trees = enumerate_trees(k);
  std::map<int, long long> by_m;
  std::vector<std::uint64_t> overlap_masks;
  overlap_masks.reserve(trees.size());
  for (const LabeledTree& t : trees) {
    std::uint64_t mask = 0;
    for (auto [u, v] : t.edges)
      if (v < ell) mask |= std::uint64_t(1) << (u * 8 + v);
    overlap_masks.push_back(mask);
  }
  for (std::size_t a = 0; a < trees.size(); ++a) {
    for (std::size_t b = 0; b < trees.size(); ++b) {
      if (overlap_masks[a] != overlap_masks[b]) continue;
      ++by_m[ell - std::popcount(overlap_masks[a])];
    }
  }
  return by_m;
}

std::map<std::pair<int, int>, double> brute_pair_expectation_sums(long long n, int k, double p) {
  if (n > 8) throw std::domain_error("brute_pair_expectation_sums: supported for n <= 8");
  std::vector<std::vector<int>> ksets;
  std::vector<int> pick;
  const std::function<void(int)> choose = [&](int from) {
    if (static_cast<int>(pick.size()) == k) {
      ksets.push_back(pick);
      return;
    }
    for (int v = from; v < n; ++v) {
      pick.push_back(v);
      choose(v + 1);
      pick.pop_back();
    }
  };
  choose(0);

  const std::vector<LabeledTree> trees = enumerate_trees(k);
  struct Instance {
    std::uint64_t vertex_mask = 0;
    std::uint64_t edge_mask = 0;  // global pair ranks
    std::uint64_t slot_mask = 0;  // all pairs inside the vertex set
  };
  const auto global_rank = [&](int u, int v) {
    if (u > v) std::swap(u, v);
    return static_cast<int>(u * (2 * n - u - 1) / 2 + (v - u - 1));
  };
  std::vector<Instance> instances;
  for (const auto& vertices : ksets) {
    std::uint64_t vmask = 0, smask = 0;
    for (int i = 0; i < k; ++i) {
      vmask |= std::uint64_t(1) << vertices[i];
      for (int j = i + 1; j < k; ++j) {
        smask |= std::uint64_t(1) << global_rank(vertices[i], vertices[j]);
      }
    }
    for (const LabeledTree& t : trees) {
      Instance inst;
      inst.vertex_mask = vmask;
      inst.slot_mask = smask;
      for (auto [u, v] : t.edges) {
        inst.edge_mask |= std::uint64_t(1) << global_rank(vertices[u], vertices[v]);
      }
      instances.push_back(inst);
    }
  }

  // E[X_A X_B] = p^{|union edges|} (1-p)^{|union slots| - |union edges|},
  // zero when the trees disagree on a shared slot.
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  const LogReal expected = log_expected_tree_count(n, k, p);
  std::map<std::pair<int, int>, double> sums;
  for (const Instance& a : instances) {
    for (const Instance& b : instances) {
      const int ell = std::popcount(a.vertex_mask & b.vertex_mask);
      if (ell == 0) continue;
      const std::uint64_t shared_slots = a.slot_mask & b.slot_mask;
      if ((a.edge_mask & shared_slots) != (b.edge_mask & shared_slots)) continue;
      const int m = ell - std::popcount(a.edge_mask & shared_slots);
      const int union_edges = std::popcount(a.edge_mask | b.edge_mask);
      const int union_slots = std::popcount(a.slot_mask | b.slot_mask);
      const double log_prob = union_edges * log_p + (union_slots - union_edges) * log_q;
      sums[{ell, m}] += std::exp(log_prob - 2.0 * expected.log_abs());
    }
  }
  return sums;
}

namespace {

SuiteResult suite_covering_trees(int kmax, bool inject_fault) {
  SuiteResult suite;
  suite.name = "covering-tree formula vs enumeration (k <= " + std::to_string(kmax) + ")";
  long long checks = 0, failures = 0;
  for (int k = 1; k <= kmax; ++k) {
    for (int ell = 1; ell <= k; ++ell) {
      for_each_partition(ell, [&](const std::vector<int>& parts) {
        ForestProfile profile{k, parts};
        BigInt formula = count_covering_trees(profile);
        if (inject_fault) formula += 1;
        for_each_profile_realization(profile, [&](const std::vector<std::pair<int, int>>& edges) {
          ++checks;
          if (brute_force_covering_trees(profile, edges) != formula) ++failures;
        });
      });
    }
  }

  // The count must not depend on which labels host the parts: spot-check
  // scattered (non-consecutive) placements through the general overload.
  {
    const std::vector<std::vector<int>> parts = {{4, 1}, {2}};
    const std::vector<std::pair<int, int>> edges = {{1, 4}};
    ++checks;
    if (brute_force_covering_trees(5, parts, edges) !=
        count_covering_trees(ForestProfile{5, {2, 1}})) {
      ++failures;
    }
  }
  {
    const std::vector<std::vector<int>> parts = {{5, 0, 3}, {6, 2}};
    const std::vector<std::pair<int, int>> edges = {{0, 5}, {0, 3}, {2, 6}};
    ++checks;
    if (brute_force_covering_trees(7, parts, edges) !=
        count_covering_trees(ForestProfile{7, {3, 2}})) {
      ++failures;
    }
  }

  suite.passed = failures == 0;
  suite.detail = std::to_string(checks) + " realizations checked, " +
                 std::to_string(failures) + " mismatches";
  return suite;
}

SuiteResult suite_composition_bound(int lmax) {
  SuiteResult suite;
  suite.name = "composition weight sum vs closed-form bound (ell <= " + std::to_string(lmax) + ")";
  long long checks = 0, failures = 0;
  for (int ell = 1; ell <= lmax; ++ell) {
    for (int m = 1; m <= ell; ++m) {
      ++checks;
      const double sum = composition_weight_sum(ell, m);
      const double bound = composition_weight_bound(ell, m);
      if (!(sum < bound)) ++failures;
    }
  }
  const auto close = [](double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b));
  };
  if (!close(composition_weight_sum(1, 1), 1.0)) ++failures;
  if (!close(composition_weight_sum(2, 2), 1.0)) ++failures;
  if (!close(composition_weight_sum(3, 1), 4.5)) ++failures;
  checks += 3;
  suite.passed = failures == 0;
  suite.detail = std::to_string(checks) + " inequalities/spot values, " +
                 std::to_string(failures) + " violations";
  return suite;
}

SuiteResult suite_pair_counts(int kmax) {
  SuiteResult suite;
  const int cap = std::min(kmax, 5);
  suite.name = "tree-pair counts vs exhaustive enumeration (k <= " + std::to_string(cap) + ")";
  long long checks = 0, failures = 0;
  for (int k = 1; k <= cap; ++k) {
    for (int ell = 1; ell <= k; ++ell) {
      std::map<int, long long> by_m = brute_overlapping_pair_counts(k, ell);
      for (int m = 1; m <= ell; ++m) {
        ++checks;
        const long long oracle = by_m.count(m) ? by_m[m] : 0;
        if (count_overlapping_tree_pairs(k, ell, m) != oracle) ++failures;
      }
    }
  }
  if (count_overlapping_tree_pairs(2, 1, 1) != 1) ++failures;
  if (count_overlapping_tree_pairs(3, 2, 1) != 4) ++failures;
  if (count_overlapping_tree_pairs(3, 2, 2) != 1) ++failures;
  checks += 3;
  suite.passed = failures == 0;
  suite.detail = std::to_string(checks) + " classes checked, " + std::to_string(failures) +
                 " mismatches";
  return suite;
}

SuiteResult suite_pair_expectation() {
  SuiteResult suite;
  suite.name = "pair expectation ratio vs exhaustive pair sum";
  long long checks = 0, failures = 0;
  const struct {
    long long n;
    int k;
    double p;
  } configs[] = {{6, 2, 0.5}, {8, 3, 0.3}};
  for (const auto& cfg : configs) {
    const auto sums = brute_pair_expectation_sums(cfg.n, cfg.k, cfg.p);
    for (int ell = 1; ell <= cfg.k; ++ell) {
      for (int m = 1; m <= ell; ++m) {
        ++checks;
        const double formula = pair_expectation_ratio(cfg.n, cfg.k, ell, m, cfg.p);
        const auto it = sums.find({ell, m});
        const double oracle = it == sums.end() ? 0.0 : it->second;
        const double tol = 1e-9 * std::max(1.0, std::abs(oracle));
        if (std::abs(formula - oracle) > tol) ++failures;
      }
    }
  }
  suite.passed = failures == 0;
  suite.detail = std::to_string(checks) + " (ell,m) classes, " + std::to_string(failures) +
                 " beyond 1e-9";
  return suite;
}

SuiteResult suite_solver_oracle() {
  SuiteResult suite;
  suite.name = "branch-and-bound solver vs subset oracle";
  long long checks = 0, failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 4 + trial % 7;                   // 4..10
    const double p = 0.1 * (1 + (trial / 7) % 9);  // 0.1..0.9
    const std::uint64_t seed = derive_seed(0xABCDE, static_cast<std::uint64_t>(trial));
    const Graph g = sample_gnp(n, p, seed);
    const SolveResult fast = max_induced_tree(g);
    const SolveResult slow = brute_force_max_induced_tree(g);
    ++checks;
    if (fast.size != slow.size || !is_induced_tree(g, fast.witness) ||
        fast.witness.count() != fast.size) {
      ++failures;
    }
  }
  const auto expect_size = [&](const Graph& g, int want) {
    ++checks;
    if (max_induced_tree(g).size != want) ++failures;
  };
  for (int n = 2; n <= 8; ++n) expect_size(make_complete(n), 2);
  for (int n = 3; n <= 10; ++n) expect_size(make_cycle(n), n - 1);
  for (int n = 1; n <= 10; ++n) expect_size(make_path(n), n);
  for (int m = 1; m <= 8; ++m) expect_size(make_star(m), m + 1);
  suite.passed = failures == 0;
  suite.detail = std::to_string(checks) + " graphs solved, " + std::to_string(failures) +
                 " mismatches";
  return suite;
}

SuiteResult suite_counter_oracle() {
  SuiteResult suite;
  suite.name = "tree counters vs subset oracle";
  long long checks = 0, failures = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 8 + trial % 3;  // 8..10
    const double p = trial % 2 == 0 ? 0.3 : 0.6;
    const Graph g = sample_gnp(n, p, derive_seed(0x5EED5, static_cast<std::uint64_t>(trial)));

    std::vector<long long> induced(n + 1, 0), fortified(n + 1, 0), maximal(n + 1, 0);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      VertexSet s(n);
      s.bits[0] = mask;
      if (!is_induced_tree(g, s)) continue;
      const int size = std::popcount(mask);
      ++induced[size];
      bool all3 = true, none1 = true;
      for (int v = 0; v < n; ++v) {
        if (mask & (1u << v)) continue;
        const int d = std::popcount(static_cast<std::uint32_t>(g.row(v)[0]) & mask);
        if (d < 3) all3 = false;
        if (d == 1) none1 = false;
      }
      if (all3) ++fortified[size];
      if (none1) ++maximal[size];
    }

    const TreeTallies tallies = tally_induced_trees(g);
    int t_oracle = 0;
    for (int kk = 1; kk <= n; ++kk) {
      checks += 6;
      if (count_induced_trees(g, kk) != induced[kk]) ++failures;
      if (count_fortified_trees(g, kk) != fortified[kk]) ++failures;
      if (count_maximal_trees(g, kk) != maximal[kk]) ++failures;
      if (static_cast<long long>(tallies.induced[kk]) != induced[kk]) ++failures;
      if (static_cast<long long>(tallies.fortified[kk]) != fortified[kk]) ++failures;
      if (static_cast<long long>(tallies.maximal[kk]) != maximal[kk]) ++failures;
      if (induced[kk] > 0) t_oracle = kk;
    }
    checks += 2;
    if (max_induced_tree(g).size != t_oracle) ++failures;
    if (count_maximal_trees(g, t_oracle) < 1) ++failures;
  }
  suite.passed = failures == 0;
  suite.detail = std::to_string(checks) + " counter comparisons, " + std::to_string(failures) +
                 " mismatches";
  return suite;
}

}  // namespace

std::vector<SuiteResult> run_verification(const VerifyOptions& options, std::ostream& log) {
  if (options.kmax < 1 || options.kmax > 7) {
    throw std::domain_error("verify: kmax must be in [1, 7]");
  }
  if (options.lmax < 1 || options.lmax > 30) {
    throw std::domain_error("verify: lmax must be in [1, 30]");
  }
  std::vector<SuiteResult> results;
  results.push_back(suite_covering_trees(options.kmax, options.inject_fault));
  results.push_back(suite_composition_bound(options.lmax));
  results.push_back(suite_pair_counts(options.kmax));
  results.push_back(suite_pair_expectation());
  results.push_back(suite_solver_oracle());
  results.push_back(suite_counter_oracle());
  for (const SuiteResult& r : results) {
    log << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << " - " << r.detail << '\n';
  }
  return results;
}

bool all_passed(const std::vector<SuiteResult>& results) {
  for (const SuiteResult& r : results) {
    if (!r.passed) return false;
  }
  return true;
}

}  // namespace indtree
