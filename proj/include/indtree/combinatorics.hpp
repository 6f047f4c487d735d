#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "indtree/bigint.hpp"
#include "indtree/logreal.hpp"

namespace indtree {

// Component-size profile of a designated forest on k labeled vertices:
// parts[i] is the vertex count of the i-th designated tree. Vertices not
// covered by any part are free isolated vertices.
struct ForestProfile {
  int k = 0;
  std::vector<int> parts;

  int ell() const;  // total vertices covered by designated parts
  int part_count() const { return static_cast<int>(parts.size()); }
  void validate() const;  // throws std::domain_error on a malformed profile
};

struct LabeledTree {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;  // (u, v) with u < v
};

// Number of labeled trees on k vertices: k^{k-2}, with 1 for k = 1, 2.
BigInt count_labeled_trees(int k);

// Spanning trees of the complete graph on the profile's k labels that
// contain every designated part as a subtree and have no edge joining two
// distinct designated parts. Conventions for ell = k: one part covering
// everything counts 1 (the tree is already spanning), two or more parts
// count 0 (they could never be joined).
BigInt count_covering_trees(const ForestProfile& profile);

// Streams all k^{k-2} labeled trees on {0..k-1} via Pruefer sequences.
// Supported for 1 <= k <= 8.
void for_each_labeled_tree(int k, const std::function<void(const LabeledTree&)>& fn);
std::vector<LabeledTree> enumerate_trees(int k);

// Exhaustive-enumeration counterpart of count_covering_trees. `parts`
// lists the concrete vertex set of each designated part; `forest_edges`
// must be exactly the union of one spanning tree per part.
BigInt brute_force_covering_trees(int k, const std::vector<std::vector<int>>& parts,
                                  const std::vector<std::pair<int, int>>& forest_edges);

// Convenience overload: part i occupies the consecutive label block
// starting after parts 0..i-1 ({0..f1-1}, {f1..f1+f2-1}, ...).
BigInt brute_force_covering_trees(const ForestProfile& profile,
                                  const std::vector<std::pair<int, int>>& forest_edges);

// Sum over compositions f1+...+fm = ell (fi >= 1) of prod_i fi^fi / fi!.
// Exact rational evaluation via DP over (remaining sum, remaining parts).
BigRat composition_weight_sum_exact(int ell, int m);
double composition_weight_sum(int ell, int m);

// Closed-form majorant e^ell * ell^{(m-2)/2} / (2^{m/2} Gamma(m/2)) of the
// composition weight sum, evaluated in log space.
double composition_weight_bound(int ell, int m);

// Ordered pairs (T_A, T_B) of trees on two k-sets sharing a fixed
// ell-subset, such that both trees induce the same forest on the shared
// subset and that forest has m components. Exact integer count.
BigInt count_overlapping_tree_pairs(int k, int ell, int m);

// Probability that both trees of such a pair appear as induced subgraphs:
// (p/(1-p))^{2k-ell+m-2} * (1-p)^{2 C(k,2) - C(ell,2)}.
LogReal pair_edge_log_probability(int k, int ell, int m, double p);

// Contribution of the (ell, m) overlap class to E[X^2]/E[X]^2, where X is
// the number of induced k-trees of G(n, p):
//   C(n,k) C(k,ell) C(n-k,k-ell) * pair count * pair probability / E[X]^2.
double pair_expectation_ratio(long long n, int k, int ell, int m, double p);

struct DampingFactor {
  double value = 1.0;
  bool applicable = false;  // false means the factor was clamped to 1
};

// ((k-ell) p)^{2(k-ell)-m+1}, the multiplier by which requiring >= 3
// neighbors outside the overlap damps a pair term. Clamped to 1 when
// (k-ell) p >= 1 or the exponent is not positive.
DampingFactor fortified_damping_factor(int k, int ell, int m, double p);

}  // namespace indtree
