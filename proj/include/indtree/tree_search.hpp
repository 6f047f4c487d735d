#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "indtree/bigint.hpp"
#include "indtree/graph.hpp"

namespace indtree {

inline constexpr std::uint64_t kDefaultNodeBudget = 100000000ull;

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolveResult {
  int size = 0;
  VertexSet witness;
  std::uint64_t nodes_explored = 0;
  bool budget_exhausted = false;
};

// Exact maximum induced tree via branch and bound over the duplicate-free
// tree expansion (grow by vertices with exactly one neighbor inside,
// forbidden-set recursion, optimistic bound = |S| + eligible vertices).
// If the node budget runs out the best tree found so far is returned with
// budget_exhausted set.
SolveResult max_induced_tree(const Graph& g, std::uint64_t node_budget = kDefaultNodeBudget);

// Exhaustive 2^n oracle, n <= 20.
SolveResult brute_force_max_induced_tree(const Graph& g);

// Number of k-vertex sets inducing a tree / inducing a tree with every
// outside vertex having >= 3 neighbors inside / inducing a maximal tree
// (no outside vertex with exactly one neighbor inside).
// Throw BudgetExceeded when the enumeration outgrows `node_budget`.
BigInt count_induced_trees(const Graph& g, int k, std::uint64_t node_budget = kDefaultNodeBudget);
BigInt count_fortified_trees(const Graph& g, int k, std::uint64_t node_budget = kDefaultNodeBudget);
BigInt count_maximal_trees(const Graph& g, int k, std::uint64_t node_budget = kDefaultNodeBudget);

// One pass over every induced tree of the graph, tallying all three
// counters for every size at once (index = tree size, 0 unused).
struct TreeTallies {
  std::vector<std::uint64_t> induced;
  std::vector<std::uint64_t> fortified;
  std::vector<std::uint64_t> maximal;
};
TreeTallies tally_induced_trees(const Graph& g, std::uint64_t node_budget = kDefaultNodeBudget);

}  // namespace indtree
