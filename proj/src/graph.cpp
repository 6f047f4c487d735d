#include "indtree/graph.hpp"

#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "indtree/rng.hpp"

namespace indtree {

Graph::Graph(int n) : n_(n), words_((n + 63) / 64) {
  if (n < 1) throw std::domain_error("Graph: requires at least one vertex");
  if (n > 20000) throw std::domain_error("Graph: dense representation capped at n <= 20000");
  adj_.assign(static_cast<std::size_t>(n_) * words_, 0);
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= n_) throw std::domain_error("Graph: vertex out of range");
}

void Graph::add_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw std::domain_error("Graph: self-loops are not allowed");
  adj_[static_cast<std::size_t>(u) * words_ + (v >> 6)] |= std::uint64_t(1) << (v & 63);
  adj_[static_cast<std::size_t>(v) * words_ + (u >> 6)] |= std::uint64_t(1) << (u & 63);
}

int Graph::degree(int v) const {
  check_vertex(v);
  int d = 0;
  const std::uint64_t* r = row(v);
  for (int w = 0; w < words_; ++w) d += std::popcount(r[w]);
  return d;
}

long long Graph::edge_count() const {
  long long total = 0;
  for (int v = 0; v < n_; ++v) total += degree(v);
  return total / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u) {
    const std::uint64_t* r = row(u);
    for (int w = 0; w < words_; ++w) {
      std::uint64_t bitsword = r[w];
      while (bitsword) {
        const int v = (w << 6) + std::countr_zero(bitsword);
        bitsword &= bitsword - 1;
        if (v > u) out.push_back({u, v});
      }
    }
  }
  return out;
}

VertexSet VertexSet::of(int n, std::initializer_list<int> members) {
  VertexSet s(n);
  for (int v : members) {
    if (v < 0 || v >= n) throw std::domain_error("VertexSet: member out of range");
    s.set(v);
  }
  return s;
}

int VertexSet::count() const {
  int c = 0;
  for (std::uint64_t w : bits) c += std::popcount(w);
  return c;
}

std::vector<int> VertexSet::members() const {
  std::vector<int> out;
  for (std::size_t w = 0; w < bits.size(); ++w) {
    std::uint64_t word = bits[w];
    while (word) {
      out.push_back(static_cast<int>((w << 6) + std::countr_zero(word)));
      word &= word - 1;
    }
  }
  return out;
}

Graph sample_gnp(int n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("sample_gnp: requires 0 <= p <= 1");
  Graph g(n);
  if (p == 0.0) return g;
  if (p == 1.0) {
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
  }
  UnitRng rng(seed);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.next_unit() < p) g.add_edge(u, v);
    }
  }
  return g;
}

bool is_induced_tree(const Graph& g, const VertexSet& s) {
  if (s.universe != g.vertex_count()) throw std::domain_error("is_induced_tree: universe mismatch");
  const std::vector<int> members = s.members();
  if (members.empty()) throw std::domain_error("is_induced_tree: empty vertex set");
  const int words = g.word_count();

  long long inside_edges = 0;
  for (int v : members) {
    const std::uint64_t* r = g.row(v);
    for (int w = 0; w < words; ++w) inside_edges += std::popcount(r[w] & s.bits[w]);
  }
  inside_edges /= 2;
  if (inside_edges != static_cast<long long>(members.size()) - 1) return false;

  // Connectivity by frontier expansion over the bit rows.
  std::vector<std::uint64_t> seen(words, 0), frontier(words, 0);
  frontier[members.front() >> 6] = std::uint64_t(1) << (members.front() & 63);
  int reached = 0;
  while (true) {
    bool any = false;
    int v = -1;
    for (int w = 0; w < words && !any; ++w) {
      std::uint64_t avail = frontier[w] & ~seen[w];
      if (avail) {
        v = (w << 6) + std::countr_zero(avail);
        any = true;
      }
    }
    if (!any) break;
    seen[v >> 6] |= std::uint64_t(1) << (v & 63);
    ++reached;
    const std::uint64_t* r = g.row(v);
    for (int w = 0; w < words; ++w) frontier[w] |= r[w] & s.bits[w];
  }
  return reached == static_cast<int>(members.size());
}

Graph read_graph_text(std::istream& in) {
  long long n = 0, m = 0;
  if (!(in >> n >> m)) throw std::runtime_error("graph text: missing header line \"n m\"");
  if (n < 1) throw std::runtime_error("graph text: vertex count must be positive");
  Graph g(static_cast<int>(n));
  for (long long i = 0; i < m; ++i) {
    long long u = 0, v = 0;
    if (!(in >> u >> v)) throw std::runtime_error("graph text: truncated edge list");
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) {
      throw std::runtime_error("graph text: invalid edge " + std::to_string(u) + " " + std::to_string(v));
    }
    g.add_edge(static_cast<int>(u), static_cast<int>(v));
  }
  return g;
}

void write_graph_text(std::ostream& out, const Graph& g) {
  const auto edge_list = g.edges();
  out << g.vertex_count() << ' ' << edge_list.size() << '\n';
  for (auto [u, v] : edge_list) out << u << ' ' << v << '\n';
}

Graph make_complete(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph make_path(int n) {
  Graph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph make_cycle(int n) {
  if (n < 3) throw std::domain_error("make_cycle: requires n >= 3");
  Graph g = make_path(n);
  g.add_edge(n - 1, 0);
  return g;
}

Graph make_star(int leaves) {
  Graph g(leaves + 1);
  for (int v = 1; v <= leaves; ++v) g.add_edge(0, v);
  return g;
}

SparseGraph sample_gnp_sparse(long long n, double p, std::uint64_t seed) {
  if (n < 1) throw std::domain_error("sample_gnp_sparse: requires n >= 1");
  if (!(p >= 0.0 && p < 1.0)) throw std::domain_error("sample_gnp_sparse: requires 0 <= p < 1");
  SparseGraph g;
  g.n = n;
  g.adj.resize(static_cast<std::size_t>(n));
  if (p == 0.0) return g;

  // Batagelj-Brandes: geometric jumps over the lexicographic pair sequence.
  // Pair indices only increase, so the (row, row_start) decode state advances
  // incrementally and the whole pass is O(n + edges).
  UnitRng rng(seed);
  const double log_q = std::log1p(-p);
  const long long total = n * (n - 1) / 2;
  long long index = -1;
  long long row = 0;
  long long row_start = 0;  // index of pair (row, row+1)
  while (true) {
    const double jump = std::floor(std::log(rng.next_unit_positive()) / log_q);
    if (jump > static_cast<double>(total)) break;
    index += 1 + static_cast<long long>(jump);
    if (index >= total) break;
    while (index - row_start >= n - 1 - row) {
      row_start += n - 1 - row;
      ++row;
    }
    const long long u = row;
    const long long v = row + 1 + (index - row_start);
    g.adj[static_cast<std::size_t>(u)].push_back(static_cast<int>(v));
    g.adj[static_cast<std::size_t>(v)].push_back(static_cast<int>(u));
  }
  return g;
}

int greedy_induced_tree_size(const SparseGraph& g, std::uint64_t seed) {
  if (g.n < 1) return 0;
  UnitRng rng(seed);
  std::vector<int> deg_in(static_cast<std::size_t>(g.n), 0);
  std::vector<char> in_set(static_cast<std::size_t>(g.n), 0);
  std::vector<int> addable;

  const int root = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(g.n)));
  in_set[root] = 1;
  int size = 1;
  for (int u : g.adj[root]) {
    deg_in[u] = 1;
    addable.push_back(u);
  }
  while (!addable.empty()) {
    const std::size_t pick = rng.next_below(addable.size());
    const int v = addable[pick];
    addable[pick] = addable.back();
    addable.pop_back();
    if (in_set[v] || deg_in[v] != 1) continue;  // stale entry
    in_set[v] = 1;
    ++size;
    for (int u : g.adj[v]) {
      if (in_set[u]) continue;
      if (++deg_in[u] == 1) addable.push_back(u);
    }
  }
  return size;
}

}  // namespace indtree
