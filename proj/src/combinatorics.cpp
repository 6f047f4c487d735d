#include "indtree/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "indtree/special.hpp"
#include "indtree/threshold.hpp"

namespace indtree {

namespace {

constexpr int kMaxEnumeratedVertices = 8;  // 8^6 = 262144 Pruefer sequences

void check_pair_class(int k, int ell, int m) {
  if (k < 1) throw std::domain_error("pair class: requires k >= 1");
  if (m < 1 || m > ell || ell > k) {
    throw std::domain_error("pair class: requires 1 <= m <= ell <= k");
  }
}

LabeledTree decode_pruefer(int k, const std::vector<int>& seq) {
  LabeledTree tree;
  tree.vertex_count = k;
  if (k == 1) return tree;
  if (k == 2) {
    tree.edges.push_back({0, 1});
    return tree;
  }
  std::vector<int> degree(k, 1);
  for (int s : seq) ++degree[s];
  std::vector<char> used(k, 0);
  for (int s : seq) {
    int leaf = -1;
    for (int v = 0; v < k; ++v) {
      if (!used[v] && degree[v] == 1) {
        leaf = v;
        break;
      }
    }
    tree.edges.push_back({std::min(leaf, s), std::max(leaf, s)});
    used[leaf] = 1;
    --degree[s];
  }
  int a = -1, b = -1;
  for (int v = 0; v < k; ++v) {
    if (!used[v] && degree[v] == 1) (a < 0 ? a : b) = v;
  }
  tree.edges.push_back({std::min(a, b), std::max(a, b)});
  std::sort(tree.edges.begin(), tree.edges.end());
  return tree;
}

// Lexicographic rank of the pair (u, v), u < v, among the C(k,2) pairs.
int pair_rank(int k, int u, int v) {
  return u * (2 * k - u - 1) / 2 + (v - u - 1);
}

// Edge bitmasks of all labeled trees on k vertices, built once per k.
const std::vector<std::uint64_t>& cached_tree_masks(int k) {
  static std::vector<std::uint64_t> cache[kMaxEnumeratedVertices + 1];
  static std::once_flag flags[kMaxEnumeratedVertices + 1];
  std::call_once(flags[k], [k] {
    auto& masks = cache[k];
    for_each_labeled_tree(k, [&](const LabeledTree& t) {
      std::uint64_t mask = 0;
      for (auto [u, v] : t.edges) mask |= std::uint64_t(1) << pair_rank(k, u, v);
      masks.push_back(mask);
    });
  });
  return cache[k];
}

}  // namespace

int ForestProfile::ell() const {
  return std::accumulate(parts.begin(), parts.end(), 0);
}

void ForestProfile::validate() const {
  if (k < 1) throw std::domain_error("ForestProfile: requires k >= 1");
  if (parts.empty()) throw std::domain_error("ForestProfile: requires at least one part");
  for (int f : parts) {
    if (f < 1) throw std::domain_error("ForestProfile: part sizes must be positive");
  }
  if (ell() > k) throw std::domain_error("ForestProfile: parts exceed the vertex count");
}

BigInt count_labeled_trees(int k) {
  if (k < 1) throw std::domain_error("count_labeled_trees: requires k >= 1");
  if (k <= 2) return 1;
  return big_pow(k, k - 2);
}

BigInt count_covering_trees(const ForestProfile& profile) {
  profile.validate();
  const int k = profile.k;
  const int ell = profile.ell();
  const int m = profile.part_count();
  if (ell == k) return m == 1 ? BigInt(1) : BigInt(0);
  BigInt result = 1;
  for (int f : profile.parts) result *= f;
  result *= big_pow(k, k - ell - 1);
  result *= m == 1 ? BigInt(1) : big_pow(k - ell, m - 1);
  return result;
}

void for_each_labeled_tree(int k, const std::function<void(const LabeledTree&)>& fn) {
  if (k < 1 || k > kMaxEnumeratedVertices) {
    throw std::domain_error("for_each_labeled_tree: supported for 1 <= k <= 8");
  }
  if (k <= 2) {
    fn(decode_pruefer(k, {}));
    return;
  }
  std::vector<int> seq(k - 2, 0);
  while (true) {
    fn(decode_pruefer(k, seq));
    int pos = k - 3;
    while (pos >= 0 && seq[pos] == k - 1) seq[pos--] = 0;
    if (pos < 0) break;
    ++seq[pos];
  }
}

std::vector<LabeledTree> enumerate_trees(int k) {
  std::vector<LabeledTree> trees;
  for_each_labeled_tree(k, [&](const LabeledTree& t) { trees.push_back(t); });
  return trees;
}

BigInt brute_force_covering_trees(int k, const std::vector<std::vector<int>>& parts,
                                  const std::vector<std::pair<int, int>>& forest_edges) {
  if (k < 1 || k > kMaxEnumeratedVertices) {
    throw std::domain_error("brute_force_covering_trees: supported for 1 <= k <= 8");
  }
  std::vector<int> part_of(k, -1);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].empty()) throw std::domain_error("brute_force_covering_trees: empty part");
    for (int v : parts[i]) {
      if (v < 0 || v >= k || part_of[v] != -1) {
        throw std::domain_error("brute_force_covering_trees: parts must be disjoint subsets of [k]");
      }
      part_of[v] = static_cast<int>(i);
    }
  }

  std::uint64_t forest_mask = 0;
  std::vector<std::vector<int>> part_adj(k);
  for (auto [u, v] : forest_edges) {
    if (u == v || u < 0 || v < 0 || u >= k || v >= k) {
      throw std::domain_error("brute_force_covering_trees: edge endpoints out of range");
    }
    if (part_of[u] == -1 || part_of[u] != part_of[v]) {
      throw std::domain_error("brute_force_covering_trees: forest edges must stay inside one part");
    }
    forest_mask |= std::uint64_t(1) << pair_rank(k, std::min(u, v), std::max(u, v));
    part_adj[u].push_back(v);
    part_adj[v].push_back(u);
  }

  // Each part must be spanned by its edges: f-1 edges forming a connected graph.
  for (const auto& part : parts) {
    int edge_count = 0;
    for (int v : part) edge_count += static_cast<int>(part_adj[v].size());
    edge_count /= 2;
    if (edge_count != static_cast<int>(part.size()) - 1) {
      throw std::domain_error("brute_force_covering_trees: part is not spanned by a tree");
    }
    std::vector<int> stack = {part.front()};
    std::vector<char> seen(k, 0);
    seen[part.front()] = 1;
    int reached = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : part_adj[v]) {
        if (!seen[u]) {
          seen[u] = 1;
          ++reached;
          stack.push_back(u);
        }
      }
    }
    if (reached != static_cast<int>(part.size())) {
      throw std::domain_error("brute_force_covering_trees: part is not connected");
    }
  }

  std::uint64_t cross_mask = 0;
  for (int u = 0; u < k; ++u) {
    for (int v = u + 1; v < k; ++v) {
      if (part_of[u] != -1 && part_of[v] != -1 && part_of[u] != part_of[v]) {
        cross_mask |= std::uint64_t(1) << pair_rank(k, u, v);
      }
    }
  }

  long long count = 0;
  for (std::uint64_t tree_mask : cached_tree_masks(k)) {
    if ((forest_mask & ~tree_mask) == 0 && (tree_mask & cross_mask) == 0) ++count;
  }
  return count;
}

BigInt brute_force_covering_trees(const ForestProfile& profile,
                                  const std::vector<std::pair<int, int>>& forest_edges) {
  profile.validate();
  std::vector<std::vector<int>> parts;
  int base = 0;
  for (int f : profile.parts) {
    std::vector<int> block(f);
    std::iota(block.begin(), block.end(), base);
    parts.push_back(std::move(block));
    base += f;
  }
  return brute_force_covering_trees(profile.k, parts, forest_edges);
}

BigRat composition_weight_sum_exact(int ell, int m) {
  if (m < 1 || ell < m) throw std::domain_error("composition_weight_sum: requires 1 <= m <= ell");
  std::vector<BigRat> weight(ell + 1);
  for (int f = 1; f <= ell; ++f) weight[f] = BigRat(big_pow(f, f), big_factorial(f));

  // table[s] after round r holds the weight sum over compositions of s into r parts.
  std::vector<BigRat> table(ell + 1), nexttab(ell + 1);
  table[0] = 1;
  for (int r = 1; r <= m; ++r) {
    std::fill(nexttab.begin(), nexttab.end(), BigRat(0));
    for (int s = r; s <= ell; ++s) {
      BigRat acc = 0;
      for (int f = 1; f <= s - r + 1; ++f) {
        if (!table[s - f].is_zero()) acc += weight[f] * table[s - f];
      }
      nexttab[s] = std::move(acc);
    }
    table.swap(nexttab);
  }
  return table[ell];
}

double composition_weight_sum(int ell, int m) {
  if (ell > 60) throw std::domain_error("composition_weight_sum: supported for ell <= 60");
  return composition_weight_sum_exact(ell, m).convert_to<double>();
}

double composition_weight_bound(int ell, int m) {
  if (ell < 1 || m < 1) throw std::domain_error("composition_weight_bound: requires ell, m >= 1");
  constexpr double kLn2 = 0.69314718055994530942;
  const double log_bound = static_cast<double>(ell) +
                           0.5 * (m - 2) * std::log(static_cast<double>(ell)) -
                           0.5 * m * kLn2 - log_gamma(0.5 * m);
  return std::exp(log_bound);
}

BigInt count_overlapping_tree_pairs(int k, int ell, int m) {
  check_pair_class(k, ell, m);
  BigRat total = composition_weight_sum_exact(ell, m);
  total *= big_factorial(ell);
  total /= big_factorial(m);
  const long long outer_exp = 2LL * k - 2LL * ell - 2;
  if (outer_exp >= 0) {
    total *= big_pow(k, outer_exp);
  } else {
    total /= big_pow(k, -outer_exp);
  }
  if (k - ell > 0) {
    total *= big_pow(k - ell, 2 * m - 2);
  } else if (m > 1) {
    total = 0;  // 0^{2m-2}; with m = 1 the factor is 0^0 = 1
  }
  if (boost::multiprecision::denominator(total) != 1) {
    throw std::logic_error("count_overlapping_tree_pairs: non-integral aggregate");
  }
  return boost::multiprecision::numerator(total);
}

LogReal pair_edge_log_probability(int k, int ell, int m, double p) {
  check_pair_class(k, ell, m);
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("pair_edge_log_probability: requires 0 < p < 1");
  }
  const long long tree_edges = 2LL * k - ell + m - 2;
  const long long pair_slots = 2LL * k * (k - 1) / 2 - static_cast<long long>(ell) * (ell - 1) / 2;
  const double log_odds = std::log(p) - std::log1p(-p);
  return LogReal::from_log(static_cast<double>(tree_edges) * log_odds +
                           static_cast<double>(pair_slots) * std::log1p(-p));
}

double pair_expectation_ratio(long long n, int k, int ell, int m, double p) {
  check_pair_class(k, ell, m);
  if (n < 2LL * k - ell) throw std::domain_error("pair_expectation_ratio: requires n >= 2k - ell");
  const BigInt pairs = count_overlapping_tree_pairs(k, ell, m);
  if (pairs == 0) return 0.0;
  const LogReal expected = log_expected_tree_count(n, k, p);
  if (expected.is_zero()) {
    throw std::domain_error("pair_expectation_ratio: E[X_k] vanishes for these parameters");
  }
  const double log_ratio = log_binomial(n, k) + log_binomial(k, ell) +
                           log_binomial(n - k, k - ell) + log_big(pairs) +
                           pair_edge_log_probability(k, ell, m, p).log_abs() -
                           2.0 * expected.log_abs();
  return std::exp(log_ratio);
}

DampingFactor fortified_damping_factor(int k, int ell, int m, double p) {
  check_pair_class(k, ell, m);
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("fortified_damping_factor: requires 0 <= p <= 1");
  }
  const int j = k - ell;
  const int exponent = 2 * j - m + 1;
  if (j < 1 || j * p >= 1.0 || exponent <= 0) return {1.0, false};
  return {std::pow(j * p, exponent), true};
}

}  // namespace indtree
