#include <doctest.h>

#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "indtree/combinatorics.hpp"
#include "indtree/special.hpp"
#include "indtree/threshold.hpp"
#include "indtree/verify.hpp"

using namespace indtree;

TEST_CASE("labeled tree counts") {
  CHECK(count_labeled_trees(1) == 1);
  CHECK(count_labeled_trees(2) == 1);
  CHECK(count_labeled_trees(3) == 3);
  CHECK(count_labeled_trees(4) == 16);
  CHECK_THROWS_AS(count_labeled_trees(0), std::domain_error);

  // Pruefer enumeration as the independent oracle.
  for (int k = 1; k <= 7; ++k) {
    long long streamed = 0;
    std::set<std::vector<std::pair<int, int>>> distinct;
    for_each_labeled_tree(k, [&](const LabeledTree& t) {
      ++streamed;
      distinct.insert(t.edges);
      CHECK(t.vertex_count == k);
      CHECK(static_cast<int>(t.edges.size()) == k - 1);
    });
    CHECK(BigInt(streamed) == count_labeled_trees(k));
    CHECK(static_cast<long long>(distinct.size()) == streamed);
  }
}

TEST_CASE("tree enumeration edge cases") {
  const auto one = enumerate_trees(1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].edges.empty());

  const auto two = enumerate_trees(2);
  REQUIRE(two.size() == 1);
  CHECK(two[0].edges == std::vector<std::pair<int, int>>{{0, 1}});

  CHECK(enumerate_trees(4).size() == 16);
  CHECK_THROWS_AS(enumerate_trees(9), std::domain_error);
  CHECK_THROWS_AS(enumerate_trees(0), std::domain_error);
}

TEST_CASE("every enumerated tree is connected and acyclic") {
  for (int k = 2; k <= 6; ++k) {
    for_each_labeled_tree(k, [&](const LabeledTree& t) {
      // k-1 edges + connectivity implies a tree
      std::vector<int> parent(k);
      for (int v = 0; v < k; ++v) parent[v] = v;
      const std::function<int(int)> find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
      };
      int components = k;
      for (auto [u, v] : t.edges) {
        const int ru = find(u), rv = find(v);
        CHECK(ru != rv);  // acyclic
        parent[ru] = rv;
        --components;
      }
      CHECK(components == 1);
    });
  }
}

TEST_CASE("covering tree formula anchors") {
  CHECK(count_covering_trees({3, {1}}) == 3);
  CHECK(count_covering_trees({4, {1, 1}}) == 8);
  CHECK(count_covering_trees({5, {5}}) == 1);
  CHECK(count_covering_trees({5, {3, 2}}) == 0);  // ell = k with two parts
  CHECK(count_covering_trees({4, {2}}) == 8);
  CHECK_THROWS_AS(count_covering_trees({3, {}}), std::domain_error);
  CHECK_THROWS_AS(count_covering_trees({3, {2, 2}}), std::domain_error);
  CHECK_THROWS_AS(count_covering_trees({0, {1}}), std::domain_error);
}

TEST_CASE("covering tree brute force anchors") {
  CHECK(brute_force_covering_trees({3, {1}}, {}) == 3);
  CHECK(brute_force_covering_trees({4, {2}}, {{0, 1}}) == 8);
  CHECK(brute_force_covering_trees({4, {1, 1}}, {}) == 8);
  // malformed realizations
  CHECK_THROWS_AS(brute_force_covering_trees({4, {2}}, {}), std::domain_error);
  CHECK_THROWS_AS(brute_force_covering_trees({4, {2}}, {{0, 2}}), std::domain_error);
  CHECK_THROWS_AS(brute_force_covering_trees({4, {2, 2}}, {{0, 1}, {1, 2}}), std::domain_error);
}

TEST_CASE("covering formula equals enumeration across all small realizations") {
  for (int k = 1; k <= 5; ++k) {
    for (int ell = 1; ell <= k; ++ell) {
      for_each_partition(ell, [&](const std::vector<int>& parts) {
        const ForestProfile profile{k, parts};
        const BigInt formula = count_covering_trees(profile);
        for_each_profile_realization(profile, [&](const std::vector<std::pair<int, int>>& edges) {
          CHECK(brute_force_covering_trees(profile, edges) == formula);
        });
      });
    }
  }
}

TEST_CASE("composition weight sums") {
  CHECK(composition_weight_sum(1, 1) == 1.0);
  CHECK(composition_weight_sum(2, 2) == 1.0);
  CHECK(composition_weight_sum(3, 1) == 4.5);
  CHECK_THROWS_AS(composition_weight_sum(2, 3), std::domain_error);
  CHECK_THROWS_AS(composition_weight_sum(3, 0), std::domain_error);

  // literal composition enumeration as oracle for moderate sizes
  for (int ell = 1; ell <= 9; ++ell) {
    for (int m = 1; m <= ell; ++m) {
      BigRat direct = 0;
      std::vector<int> comp(m, 1);
      const std::function<void(int, int)> rec = [&](int idx, int left) {
        if (idx == m - 1) {
          comp[idx] = left;
          BigRat term = 1;
          for (int f : comp) term *= BigRat(big_pow(f, f), big_factorial(f));
          direct += term;
          return;
        }
        for (int f = 1; f <= left - (m - 1 - idx); ++f) {
          comp[idx] = f;
          rec(idx + 1, left - f);
        }
      };
      rec(0, ell);
      CHECK(composition_weight_sum_exact(ell, m) == direct);
    }
  }
}

TEST_CASE("composition weight bound") {
  const double e = std::exp(1.0);
  CHECK(std::abs(composition_weight_bound(1, 1) - e / std::sqrt(2.0 * 3.14159265358979323846)) <
        1e-12);
  CHECK(std::abs(composition_weight_bound(2, 2) - e * e / 2.0) < 1e-12);
  for (int ell = 1; ell <= 30; ++ell) {
    for (int m = 1; m <= ell; ++m) {
      CHECK(composition_weight_sum(ell, m) < composition_weight_bound(ell, m));
    }
  }
}

TEST_CASE("overlapping tree pair counts") {
  CHECK(count_overlapping_tree_pairs(2, 1, 1) == 1);
  CHECK(count_overlapping_tree_pairs(3, 2, 1) == 4);
  CHECK(count_overlapping_tree_pairs(3, 2, 2) == 1);
  // coincident class: both trees equal, so k^{k-2} pairs
  CHECK(count_overlapping_tree_pairs(5, 5, 1) == count_labeled_trees(5));
  CHECK(count_overlapping_tree_pairs(5, 5, 2) == 0);
  // single shared vertex: trees are unconstrained
  CHECK(count_overlapping_tree_pairs(4, 1, 1) == count_labeled_trees(4) * count_labeled_trees(4));
  CHECK_THROWS_AS(count_overlapping_tree_pairs(3, 2, 3), std::domain_error);
  CHECK_THROWS_AS(count_overlapping_tree_pairs(3, 4, 1), std::domain_error);

  for (int k = 1; k <= 4; ++k) {
    for (int ell = 1; ell <= k; ++ell) {
      auto by_m = brute_overlapping_pair_counts(k, ell);
      for (int m = 1; m <= ell; ++m) {
        CHECK(count_overlapping_tree_pairs(k, ell, m) == BigInt(by_m.count(m) ? by_m[m] : 0));
      }
    }
  }
}

TEST_CASE("pair class sum reproduces the direct census") {
  // With the (A, B) choice factors attached, the per-class counts must add up
  // to the total number of ordered overlapping pairs that coincide on their
  // overlap, counted directly over every pair on [n].
  const long long n = 7;
  const int k = 3;

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

  const auto trees = enumerate_trees(k);
  struct Inst {
    std::uint64_t vmask = 0;
    std::set<std::pair<int, int>> edges;
  };
  std::vector<Inst> instances;
  for (const auto& vertices : ksets) {
    std::uint64_t vmask = 0;
    for (int v : vertices) vmask |= std::uint64_t(1) << v;
    for (const auto& t : trees) {
      Inst inst;
      inst.vmask = vmask;
      for (auto [u, v] : t.edges) {
        const int a = vertices[u], b = vertices[v];
        inst.edges.insert({std::min(a, b), std::max(a, b)});
      }
      instances.push_back(inst);
    }
  }

  std::map<std::pair<int, int>, long long> census;
  for (const auto& a : instances) {
    for (const auto& b : instances) {
      const std::uint64_t overlap = a.vmask & b.vmask;
      const int ell = std::popcount(overlap);
      if (ell == 0) continue;
      bool consistent = true;
      int shared_edges = 0;
      for (const auto& e : a.edges) {
        const bool inside = (overlap >> e.first & 1) && (overlap >> e.second & 1);
        if (!inside) continue;
        if (!b.edges.count(e)) consistent = false;
        ++shared_edges;
      }
      for (const auto& e : b.edges) {
        const bool inside = (overlap >> e.first & 1) && (overlap >> e.second & 1);
        if (inside && !a.edges.count(e)) consistent = false;
      }
      if (!consistent) continue;
      ++census[{ell, ell - shared_edges}];
    }
  }

  long long census_total = 0;
  for (const auto& entry : census) census_total += entry.second;

  long long formula_total = 0;
  for (int ell = 1; ell <= k; ++ell) {
    for (int m = 1; m <= ell; ++m) {
      const BigInt classes = big_binomial(n, k) * big_binomial(k, ell) *
                             big_binomial(n - k, k - ell) *
                             count_overlapping_tree_pairs(k, ell, m);
      formula_total += classes.convert_to<long long>();
      const auto it = census.find({ell, m});
      CHECK(classes == BigInt(it == census.end() ? 0 : it->second));
    }
  }
  CHECK(formula_total == census_total);
}

TEST_CASE("pair edge probability") {
  // coincident trees reduce to the single-tree probability
  for (int k = 2; k <= 6; ++k) {
    const double p = 0.31;
    const LogReal pair = pair_edge_log_probability(k, k, 1, p);
    const double single = (k - 1) * std::log(p) +
                          (k * (k - 1) / 2 - k + 1) * std::log1p(-p);
    CHECK(std::abs(pair.log_abs() - single) < 1e-10 * std::max(1.0, std::abs(single)));
  }
  // two edges sharing one vertex
  const LogReal shared = pair_edge_log_probability(2, 1, 1, 0.5);
  CHECK(std::abs(shared.value() - 0.25) < 1e-12);
  // always a probability
  for (int k = 1; k <= 5; ++k)
    for (int ell = 1; ell <= k; ++ell)
      for (int m = 1; m <= ell; ++m) {
        const double v = pair_edge_log_probability(k, ell, m, 0.37).value();
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
      }
  CHECK_THROWS_AS(pair_edge_log_probability(3, 2, 1, 0.0), std::domain_error);
  CHECK_THROWS_AS(pair_edge_log_probability(3, 2, 1, 1.0), std::domain_error);
}

TEST_CASE("pair expectation ratio diagonal") {
  for (const auto& [n, k, p] : {std::tuple<long long, int, double>{20, 4, 0.3},
                                {50, 6, 0.5},
                                {200, 5, 0.1}}) {
    const double diag = pair_expectation_ratio(n, k, k, 1, p);
    const double expected = std::exp(log_expected_tree_count(n, k, p).log_abs());
    CHECK(std::abs(diag * expected - 1.0) < 1e-9);
  }
}

TEST_CASE("pair expectation ratio matches exhaustive sums") {
  const auto sums = brute_pair_expectation_sums(6, 2, 0.5);
  for (int ell = 1; ell <= 2; ++ell) {
    for (int m = 1; m <= ell; ++m) {
      const auto it = sums.find({ell, m});
      const double oracle = it == sums.end() ? 0.0 : it->second;
      const double got = pair_expectation_ratio(6, 2, ell, m, 0.5);
      CHECK(std::abs(got - oracle) <= 1e-9 * std::max(1.0, oracle));
    }
  }
  CHECK_THROWS_AS(pair_expectation_ratio(4, 3, 1, 1, 0.5), std::domain_error);  // n < 2k - ell
}

TEST_CASE("fortified damping factor") {
  const auto tiny = fortified_damping_factor(10, 9, 1, 0.001);
  CHECK(tiny.applicable);
  CHECK(std::abs(tiny.value - 1e-6) < 1e-18);

  const auto linear = fortified_damping_factor(10, 9, 2, 0.25);
  CHECK(linear.applicable);
  CHECK(std::abs(linear.value - 0.25) < 1e-15);

  const auto clamped = fortified_damping_factor(10, 5, 1, 0.3);  // (k-ell) p = 1.5
  CHECK_FALSE(clamped.applicable);
  CHECK(clamped.value == 1.0);

  const auto diag = fortified_damping_factor(4, 4, 1, 0.2);  // exponent 1 - m <= 0
  CHECK_FALSE(diag.applicable);
  CHECK(diag.value == 1.0);
}
