#include "indtree/tree_search.hpp"

#include <algorithm>
#include <bit>
#include <cstring>

namespace indtree {

namespace {

constexpr int kMaxExactVertices = 1024;   // exact search cap (dense state)
constexpr int kMaxBruteVertices = 20;     // 2^n subset oracle cap

// Duplicate-free expansion of connected induced trees.
//
// State outside the current set S (deg values capped at 3):
//   deg[v] = min(3, |N(v) cap S|)
//   A: deg == 1, D: deg == 0, B2: deg == 2 (all exclude members of S).
// A vertex with two or more neighbors in S can never join any tree
// extending S, so A|D is exactly the set of vertices that could still be
// added along this branch. X marks vertices forbidden by the enumeration
// order; it filters candidate selection and the optimistic bound but not
// the A/D/B2 bookkeeping, which describes the whole graph.
//
// Each induced tree is visited exactly once: trees are rooted at their
// minimum vertex, and at every node the branch for candidate v forbids all
// earlier candidates, so a target tree descends along the unique chain of
// its lowest-indexed usable extension vertices.
class TreeWalker {
 public:
  TreeWalker(const Graph& g, std::uint64_t budget)
      : g_(g),
        n_(g.vertex_count()),
        words_(g.word_count()),
        budget_(budget),
        S_(words_),
        X_(words_),
        A_(words_),
        D_(words_),
        B2_(words_),
        deg_(n_),
        saved_(static_cast<std::size_t>(n_ + 2) * words_ * 4),
        saved_deg_(static_cast<std::size_t>(n_ + 2) * n_),
        cand_(static_cast<std::size_t>(n_ + 2) * words_) {
    if (n_ > kMaxExactVertices) {
      throw std::domain_error("tree search: exact enumeration capped at n <= 1024");
    }
    universe_.assign(words_, ~std::uint64_t(0));
    if (n_ & 63) universe_[words_ - 1] = (std::uint64_t(1) << (n_ & 63)) - 1;
  }

  std::uint64_t nodes() const { return nodes_; }
  bool budget_exhausted() const { return exhausted_; }

  int eligible_count() const {
    int c = 0;
    for (int w = 0; w < words_; ++w) c += std::popcount((A_[w] | D_[w]) & ~X_[w]);
    return c;
  }

  bool no_outside_deg1() const {
    for (int w = 0; w < words_; ++w)
      if (A_[w]) return false;
    return true;
  }

  bool outside_all_deg3() const {
    for (int w = 0; w < words_; ++w)
      if (A_[w] | D_[w] | B2_[w]) return false;
    return true;
  }

  void copy_set(std::vector<std::uint64_t>& dest) const { dest = S_; }

  template <class Policy>
  void run(Policy& pol) {
    for (int r = 0; r < n_ && !exhausted_; ++r) {
      reset_root(r, /*forbid_earlier=*/true);
      recurse(pol, 1);
    }
  }

  // Greedy multi-start lower bound; fills `witness` with the best tree.
  int greedy(std::vector<std::uint64_t>& witness) {
    int best = 0;
    for (int r = 0; r < n_; ++r) {
      reset_root(r, /*forbid_earlier=*/false);
      int size = 1;
      while (true) {
        int pick = -1, pick_score = -1;
        for (int w = 0; w < words_; ++w) {
          std::uint64_t word = A_[w];
          while (word) {
            const int v = (w << 6) + std::countr_zero(word);
            word &= word - 1;
            int score = 0;
            const std::uint64_t* row = g_.row(v);
            for (int ww = 0; ww < words_; ++ww) score += std::popcount(row[ww] & D_[ww]);
            if (score > pick_score) {
              pick_score = score;
              pick = v;
            }
          }
        }
        if (pick < 0) break;
        add_vertex(pick);
        ++size;
      }
      if (size > best) {
        best = size;
        witness = S_;
      }
    }
    return best;
  }

 private:
  void reset_root(int r, bool forbid_earlier) {
    std::fill(S_.begin(), S_.end(), 0);
    std::fill(B2_.begin(), B2_.end(), 0);
    std::fill(X_.begin(), X_.end(), 0);
    std::memset(deg_.data(), 0, deg_.size());
    if (forbid_earlier) {
      for (int v = 0; v < r; ++v) X_[v >> 6] |= std::uint64_t(1) << (v & 63);
    }
    S_[r >> 6] |= std::uint64_t(1) << (r & 63);
    const std::uint64_t* row = g_.row(r);
    for (int w = 0; w < words_; ++w) {
      A_[w] = row[w];
      D_[w] = universe_[w] & ~row[w];
    }
    D_[r >> 6] &= ~(std::uint64_t(1) << (r & 63));
    for (int w = 0; w < words_; ++w) {
      std::uint64_t word = row[w];
      while (word) {
        deg_[(w << 6) + std::countr_zero(word)] = 1;
        word &= word - 1;
      }
    }
  }

  void add_vertex(int v) {
    S_[v >> 6] |= std::uint64_t(1) << (v & 63);
    A_[v >> 6] &= ~(std::uint64_t(1) << (v & 63));
    D_[v >> 6] &= ~(std::uint64_t(1) << (v & 63));
    const std::uint64_t* row = g_.row(v);
    for (int w = 0; w < words_; ++w) {
      std::uint64_t word = row[w] & ~S_[w];
      while (word) {
        const int u = (w << 6) + std::countr_zero(word);
        word &= word - 1;
        switch (deg_[u]) {
          case 0:
            deg_[u] = 1;
            D_[w] &= ~(std::uint64_t(1) << (u & 63));
            A_[w] |= std::uint64_t(1) << (u & 63);
            break;
          case 1:
            deg_[u] = 2;
            A_[w] &= ~(std::uint64_t(1) << (u & 63));
            B2_[w] |= std::uint64_t(1) << (u & 63);
            break;
          case 2:
            deg_[u] = 3;
            B2_[w] &= ~(std::uint64_t(1) << (u & 63));
            break;
          default:
            break;  // capped at 3
        }
      }
    }
  }

  void save_level(int level) {
    std::uint64_t* slot = saved_.data() + static_cast<std::size_t>(level) * words_ * 4;
    std::memcpy(slot, A_.data(), words_ * 8);
    std::memcpy(slot + words_, D_.data(), words_ * 8);
    std::memcpy(slot + 2 * words_, B2_.data(), words_ * 8);
    std::memcpy(slot + 3 * words_, X_.data(), words_ * 8);
    std::memcpy(saved_deg_.data() + static_cast<std::size_t>(level) * n_, deg_.data(), n_);
  }

  void restore_core(int level) {
    const std::uint64_t* slot = saved_.data() + static_cast<std::size_t>(level) * words_ * 4;
    std::memcpy(A_.data(), slot, words_ * 8);
    std::memcpy(D_.data(), slot + words_, words_ * 8);
    std::memcpy(B2_.data(), slot + 2 * words_, words_ * 8);
    std::memcpy(deg_.data(), saved_deg_.data() + static_cast<std::size_t>(level) * n_, n_);
  }

  void restore_forbidden(int level) {
    const std::uint64_t* slot = saved_.data() + static_cast<std::size_t>(level) * words_ * 4;
    std::memcpy(X_.data(), slot + 3 * words_, words_ * 8);
  }

  template <class Policy>
  void recurse(Policy& pol, int size) {
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    pol.node(*this, size);
    if (!pol.descend(*this, size)) return;

    std::uint64_t* cand = cand_.data() + static_cast<std::size_t>(size) * words_;
    bool any = false;
    for (int w = 0; w < words_; ++w) {
      cand[w] = A_[w] & ~X_[w];
      any |= cand[w] != 0;
    }
    if (!any) return;

    save_level(size);
    for (int w = 0; w < words_; ++w) {
      std::uint64_t word = cand[w];
      while (word) {
        const int v = (w << 6) + std::countr_zero(word);
        word &= word - 1;
        if (!pol.child_check(*this, size)) goto done;
        add_vertex(v);
        recurse(pol, size + 1);
        if (exhausted_) return;
        restore_core(size);
        S_[v >> 6] &= ~(std::uint64_t(1) << (v & 63));
        X_[v >> 6] |= std::uint64_t(1) << (v & 63);
      }
    }
  done:
    restore_forbidden(size);
  }

  const Graph& g_;
  int n_;
  int words_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;

  std::vector<std::uint64_t> S_, X_, A_, D_, B2_, universe_;
  std::vector<std::uint8_t> deg_;
  std::vector<std::uint64_t> saved_;
  std::vector<std::uint8_t> saved_deg_;
  std::vector<std::uint64_t> cand_;
};

struct SolvePolicy {
  int best = 0;
  std::vector<std::uint64_t>* witness;

  void node(TreeWalker& w, int size) {
    if (size > best) {
      best = size;
      w.copy_set(*witness);
    }
  }
  bool descend(TreeWalker& w, int size) { return size + w.eligible_count() > best; }
  bool child_check(TreeWalker& w, int size) { return size + w.eligible_count() > best; }
};

enum class TreeClass { any, fortified, maximal };

struct CountPolicy {
  int target;
  TreeClass cls;
  std::uint64_t count = 0;

  void node(TreeWalker& w, int size) {
    if (size != target) return;
    switch (cls) {
      case TreeClass::any:
        ++count;
        break;
      case TreeClass::fortified:
        count += w.outside_all_deg3() ? 1 : 0;
        break;
      case TreeClass::maximal:
        count += w.no_outside_deg1() ? 1 : 0;
        break;
    }
  }
  bool descend(TreeWalker& w, int size) {
    return size < target && size + w.eligible_count() >= target;
  }
  bool child_check(TreeWalker& w, int size) { return size + w.eligible_count() >= target; }
};

struct TallyPolicy {
  TreeTallies* tallies;

  void node(TreeWalker& w, int size) {
    ++tallies->induced[size];
    if (w.no_outside_deg1()) {
      ++tallies->maximal[size];
      if (w.outside_all_deg3()) ++tallies->fortified[size];
    }
  }
  bool descend(TreeWalker&, int) { return true; }
  bool child_check(TreeWalker&, int) { return true; }
};

BigInt run_count(const Graph& g, int k, TreeClass cls, std::uint64_t budget) {
  if (k < 1 || k > g.vertex_count()) {
    throw std::domain_error("tree count: requires 1 <= k <= n");
  }
  TreeWalker walker(g, budget);
  CountPolicy pol{k, cls};
  walker.run(pol);
  if (walker.budget_exhausted()) throw BudgetExceeded("tree count: node budget exhausted");
  return BigInt(pol.count);
}

}  // namespace

SolveResult max_induced_tree(const Graph& g, std::uint64_t node_budget) {
  TreeWalker walker(g, node_budget);
  std::vector<std::uint64_t> witness_bits(g.word_count(), 0);
  SolvePolicy pol{0, &witness_bits};
  pol.best = walker.greedy(witness_bits);
  walker.run(pol);

  SolveResult result;
  result.size = pol.best;
  result.witness = VertexSet(g.vertex_count());
  result.witness.bits = witness_bits;
  result.nodes_explored = walker.nodes();
  result.budget_exhausted = walker.budget_exhausted();
  return result;
}

SolveResult brute_force_max_induced_tree(const Graph& g) {
  const int n = g.vertex_count();
  if (n > kMaxBruteVertices) {
    throw std::domain_error("brute_force_max_induced_tree: capped at n <= 20");
  }
  std::vector<std::uint32_t> adj(n, 0);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (v != u && g.has_edge(u, v)) adj[u] |= std::uint32_t(1) << v;

  SolveResult result;
  result.witness = VertexSet(n);
  const std::uint32_t full = (n == 32) ? ~std::uint32_t(0) : ((std::uint32_t(1) << n) - 1);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    ++result.nodes_explored;
    const int size = std::popcount(mask);
    if (size <= result.size) continue;
    int twice_edges = 0;
    std::uint32_t scan = mask;
    while (scan) {
      const int v = std::countr_zero(scan);
      scan &= scan - 1;
      twice_edges += std::popcount(adj[v] & mask);
    }
    if (twice_edges != 2 * (size - 1)) continue;
    // Connectivity over the subset.
    std::uint32_t reach = mask & (~mask + 1);
    while (true) {
      std::uint32_t grown = reach;
      std::uint32_t scan2 = reach;
      while (scan2) {
        const int v = std::countr_zero(scan2);
        scan2 &= scan2 - 1;
        grown |= adj[v] & mask;
      }
      if (grown == reach) break;
      reach = grown;
    }
    if (reach != mask) continue;
    result.size = size;
    result.witness.bits[0] = mask;
  }
  return result;
}

BigInt count_induced_trees(const Graph& g, int k, std::uint64_t node_budget) {
  return run_count(g, k, TreeClass::any, node_budget);
}

BigInt count_fortified_trees(const Graph& g, int k, std::uint64_t node_budget) {
  return run_count(g, k, TreeClass::fortified, node_budget);
}

BigInt count_maximal_trees(const Graph& g, int k, std::uint64_t node_budget) {
  return run_count(g, k, TreeClass::maximal, node_budget);
}

TreeTallies tally_induced_trees(const Graph& g, std::uint64_t node_budget) {
  TreeTallies tallies;
  tallies.induced.assign(g.vertex_count() + 1, 0);
  tallies.fortified.assign(g.vertex_count() + 1, 0);
  tallies.maximal.assign(g.vertex_count() + 1, 0);
  TreeWalker walker(g, node_budget);
  TallyPolicy pol{&tallies};
  walker.run(pol);
  if (walker.budget_exhausted()) throw BudgetExceeded("tally: node budget exhausted");
  return tallies;
}

}  // namespace indtree
