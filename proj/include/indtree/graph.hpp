#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <vector>

namespace indtree {

// Undirected simple graph over vertices 0..n-1 stored as a packed symmetric
// bit matrix (one row of 64-bit words per vertex, zero diagonal).
class Graph {
 public:
  explicit Graph(int n);

  int vertex_count() const { return n_; }
  int word_count() const { return words_; }

  bool has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return (adj_[static_cast<std::size_t>(u) * words_ + (v >> 6)] >> (v & 63)) & 1u;
  }

  void add_edge(int u, int v);

  const std::uint64_t* row(int v) const { return adj_.data() + static_cast<std::size_t>(v) * words_; }

  int degree(int v) const;
  long long edge_count() const;
  std::vector<std::pair<int, int>> edges() const;  // lexicographically sorted

 private:
  void check_vertex(int v) const;

  int n_;
  int words_;
  std::vector<std::uint64_t> adj_;
};

// Subset of the vertices of a graph with n vertices.
struct VertexSet {
  int universe = 0;
  std::vector<std::uint64_t> bits;

  explicit VertexSet(int n = 0) : universe(n), bits((n + 63) / 64, 0) {}
  static VertexSet of(int n, std::initializer_list<int> members);

  bool test(int v) const { return (bits[v >> 6] >> (v & 63)) & 1u; }
  void set(int v) { bits[v >> 6] |= std::uint64_t(1) << (v & 63); }
  void reset(int v) { bits[v >> 6] &= ~(std::uint64_t(1) << (v & 63)); }
  int count() const;
  std::vector<int> members() const;
};

// G(n, p): every unordered pair is an edge independently with probability p.
// Deterministic in (n, p, seed); pairs are drawn in lexicographic order from
// a UnitRng seeded with `seed`. Dense representation, capped at n <= 20000.
Graph sample_gnp(int n, double p, std::uint64_t seed);

// True iff the subgraph induced by `s` is connected and acyclic (a single
// vertex counts as a tree). Throws on an empty set.
bool is_induced_tree(const Graph& g, const VertexSet& s);

// Text format: first line "n m", then m lines "u v" (0-indexed, u < v),
// written in lexicographic order.
Graph read_graph_text(std::istream& in);
void write_graph_text(std::ostream& out, const Graph& g);

// Structured graphs used throughout the test suites.
Graph make_complete(int n);
Graph make_path(int n);
Graph make_cycle(int n);
Graph make_star(int leaves);

// Adjacency-list G(n, p) sampler for large sparse instances (geometric
// jumps over the pair sequence; expected O(n + p n^2) work). Only the
// heuristic reporting path uses this.
struct SparseGraph {
  long long n = 0;
  std::vector<std::vector<int>> adj;
};
SparseGraph sample_gnp_sparse(long long n, double p, std::uint64_t seed);

// Randomized greedy induced-tree grower; returns the size reached.
// Heuristic only: no optimality claim.
int greedy_induced_tree_size(const SparseGraph& g, std::uint64_t seed);

}  // namespace indtree
